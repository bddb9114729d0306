#include <doctest.h>

#include <cstdio>
#include <random>

#include "rotel/field_io.hpp"
#include "test_util.hpp"

using namespace rotel;
using namespace rotel::testutil;

TEST_CASE("serialize/parse round trip is bit exact for every kind") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const GridSpec sp = GridSpec::spatial({4, 5, 4}, {1.0, 0.3, 2.0});
  const GridSpec st = GridSpec::spacetime({4, 4, 4, 4}, {1.0, 1.0, 1.0, 1.0});

  std::vector<FieldFile> files;
  {
    ScalarField f(sp);
    for (double& x : f.data) x = u(rng) * 1e3;
    files.push_back({FieldKind::scalar, f});
  }
  {
    CovectorField f(st);
    for (Vec3& x : f.data) x = Vec3{u(rng), u(rng) * 1e-7, u(rng)};
    files.push_back({FieldKind::covector, f});
  }
  {
    SpinorField f(sp);
    for (Spinor& x : f.data) x = Spinor{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
    files.push_back({FieldKind::spinor, f});
  }
  {
    Rank2Field f(sp);
    for (Mat3& x : f.data)
      for (double& c : x.c) c = u(rng);
    files.push_back({FieldKind::rank2, f});
  }
  {
    Rank3Field f(sp);
    for (Rank3& x : f.data)
      for (double& c : x.c) c = u(rng) / 3.0;
    files.push_back({FieldKind::rank3, f});
  }

  for (const FieldFile& file : files) {
    const std::string text = serialize_field(file);
    const FieldFile back = parse_field(text);
    CHECK(to_string(back.kind) == to_string(file.kind));
    // byte-identical re-serialization implies bit-exact doubles
    CHECK(serialize_field(back) == text);
  }
}

TEST_CASE("coframe kind round trips through a real conversion") {
  const GridSpec sp = GridSpec::spatial({4, 4, 4}, {tau, tau, tau});
  const SpinorField xi = random_spinor_field(sp, 7, 1, 0.2);
  const FieldFile file{FieldKind::coframe, coframe_field_from_spinor(xi)};
  const FieldFile back = parse_field(serialize_field(file));
  const Rank2Field& orig = std::get<Rank2Field>(file.field);
  const Rank2Field& readback = as_rank2(back);
  for (std::size_t i = 0; i < orig.size(); ++i)
    for (int c = 0; c < 9; ++c)
      CHECK(orig[i].c[static_cast<std::size_t>(c)] ==
            readback[i].c[static_cast<std::size_t>(c)]);
}

TEST_CASE("save and load through the filesystem") {
  const GridSpec sp = GridSpec::spatial({4, 4, 4}, {1.0, 1.0, 1.0});
  SpinorField f(sp, Spinor{cplx(1.0 / 3.0, -2.0 / 7.0), cplx(0.0, 1e-300)});
  const std::string path = "/tmp/rotel_io_test_field.json";
  save_field(path, FieldFile{FieldKind::spinor, f});
  const FieldFile back = load_field(path);
  const SpinorField& g = as_spinor(back);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(f[i][0] == g[i][0]);
    CHECK(f[i][1] == g[i][1]);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_field("/tmp/rotel_definitely_missing.json"), field_io_error);
}

TEST_CASE("schema violations are rejected with diagnostics") {
  CHECK_THROWS_AS(parse_field("not json at all"), field_io_error);
  CHECK_THROWS_AS(parse_field(R"({"kind":"scalar","data":[]})"), field_io_error);
  CHECK_THROWS_AS(parse_field(R"({"grid":{"n":[4,4,4],"L":[1,1,1]},"kind":"sponge","data":[]})"),
                  field_io_error);
  // wrong data length
  CHECK_THROWS_AS(parse_field(R"({"grid":{"n":[4,4,4],"L":[1,1,1]},"kind":"scalar","data":[1]})"),
                  field_io_error);
  // spinor entries must be [re, im] pairs
  CHECK_THROWS_AS(
      parse_field(R"({"grid":{"n":[4,4,4],"L":[1,1,1]},"kind":"spinor","data":[1]})"),
      field_io_error);
  // grid arity mismatch
  CHECK_THROWS_AS(parse_field(R"({"grid":{"n":[4,4],"L":[1,1]},"kind":"scalar","data":[]})"),
                  field_io_error);

  // typed accessor mismatch
  const GridSpec sp = GridSpec::spatial({4, 4, 4}, {1.0, 1.0, 1.0});
  const FieldFile f{FieldKind::scalar, ScalarField(sp, 1.0)};
  CHECK_THROWS_AS(as_spinor(f), field_io_error);
}
