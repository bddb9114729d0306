#include "rotel/field_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rotel {

using json = nlohmann::ordered_json;

FieldKind field_kind_from_string(const std::string& s) {
  if (s == "scalar") return FieldKind::scalar;
  if (s == "covector") return FieldKind::covector;
  if (s == "spinor") return FieldKind::spinor;
  if (s == "coframe") return FieldKind::coframe;
  if (s == "rank2") return FieldKind::rank2;
  if (s == "rank3") return FieldKind::rank3;
  throw field_io_error("unknown field kind '" + s + "'");
}

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::scalar: return "scalar";
    case FieldKind::covector: return "covector";
    case FieldKind::spinor: return "spinor";
    case FieldKind::coframe: return "coframe";
    case FieldKind::rank2: return "rank2";
    case FieldKind::rank3: return "rank3";
  }
  return "?";
}

namespace {

json grid_to_json(const GridSpec& g) {
  json gj;
  if (g.has_time) {
    gj["n"] = {g.n[0], g.n[1], g.n[2], g.n[3]};
    gj["L"] = {g.length[0], g.length[1], g.length[2], g.length[3]};
  } else {
    gj["n"] = {g.n[1], g.n[2], g.n[3]};
    gj["L"] = {g.length[1], g.length[2], g.length[3]};
  }
  return gj;
}

GridSpec grid_from_json(const json& gj) {
  if (!gj.contains("n") || !gj.contains("L")) throw field_io_error("grid needs 'n' and 'L'");
  const auto n = gj["n"].get<std::vector<int>>();
  const auto l = gj["L"].get<std::vector<double>>();
  if (n.size() != l.size()) throw field_io_error("grid 'n' and 'L' length mismatch");
  if (n.size() == 3) return GridSpec::spatial({n[0], n[1], n[2]}, {l[0], l[1], l[2]});
  if (n.size() == 4)
    return GridSpec::spacetime({n[0], n[1], n[2], n[3]}, {l[0], l[1], l[2], l[3]});
  throw field_io_error("grid must have 3 or 4 axes");
}

template <class Push>
void push_all(const FieldFile& f, Push&& push_real, const std::function<void(cplx)>& push_cplx) {
  std::visit(
      [&](const auto& field) {
        using T = std::decay_t<decltype(field)>;
        for (const auto& value : field.data) {
          if constexpr (std::is_same_v<T, ScalarField>) {
            push_real(value);
          } else if constexpr (std::is_same_v<T, CovectorField>) {
            for (int i = 0; i < 3; ++i) push_real(value[i]);
          } else if constexpr (std::is_same_v<T, SpinorField>) {
            push_cplx(value[0]);
            push_cplx(value[1]);
          } else if constexpr (std::is_same_v<T, Rank2Field>) {
            for (double x : value.c) push_real(x);
          } else {
            for (double x : value.c) push_real(x);
          }
        }
      },
      f.field);
}

}  // namespace

std::string serialize_field(const FieldFile& f) {
  json doc;
  doc["grid"] = std::visit([](const auto& field) { return grid_to_json(field.grid); }, f.field);
  doc["kind"] = to_string(f.kind);
  json data = json::array();
  push_all(
      f, [&](double x) { data.push_back(x); },
      [&](cplx z) { data.push_back(json::array({z.real(), z.imag()})); });
  doc["data"] = std::move(data);
  return doc.dump();
}

FieldFile parse_field(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw field_io_error(std::string("field file is not valid JSON: ") + e.what());
  }
  if (!doc.contains("grid") || !doc.contains("kind") || !doc.contains("data"))
    throw field_io_error("field file needs 'grid', 'kind' and 'data'");

  const GridSpec grid = grid_from_json(doc["grid"]);
  const FieldKind kind = field_kind_from_string(doc["kind"].get<std::string>());
  const json& data = doc["data"];
  const std::size_t points = grid.points();

  auto expect = [&](std::size_t per_point) {
    if (data.size() != points * per_point)
      throw field_io_error("data length " + std::to_string(data.size()) + " does not match " +
                           std::to_string(points * per_point) + " expected entries");
  };
  auto real_at = [&](std::size_t i) {
    if (!data[i].is_number()) throw field_io_error("data entry " + std::to_string(i) +
                                                   " is not a number");
    return data[i].get<double>();
  };
  auto cplx_at = [&](std::size_t i) {
    const json& e = data[i];
    if (!e.is_array() || e.size() != 2)
      throw field_io_error("data entry " + std::to_string(i) + " is not a [re, im] pair");
    return cplx(e[0].get<double>(), e[1].get<double>());
  };

  FieldFile out;
  out.kind = kind;
  switch (kind) {
    case FieldKind::scalar: {
      expect(1);
      ScalarField field(grid);
      for (std::size_t i = 0; i < points; ++i) field[i] = real_at(i);
      out.field = std::move(field);
      break;
    }
    case FieldKind::covector: {
      expect(3);
      CovectorField field(grid);
      for (std::size_t i = 0; i < points; ++i)
        for (int c = 0; c < 3; ++c) field[i][c] = real_at(3 * i + static_cast<std::size_t>(c));
      out.field = std::move(field);
      break;
    }
    case FieldKind::spinor: {
      expect(2);
      SpinorField field(grid);
      for (std::size_t i = 0; i < points; ++i) {
        field[i][0] = cplx_at(2 * i);
        field[i][1] = cplx_at(2 * i + 1);
      }
      out.field = std::move(field);
      break;
    }
    case FieldKind::coframe:
    case FieldKind::rank2: {
      expect(9);
      Rank2Field field(grid);
      for (std::size_t i = 0; i < points; ++i)
        for (std::size_t c = 0; c < 9; ++c) field[i].c[c] = real_at(9 * i + c);
      out.field = std::move(field);
      break;
    }
    case FieldKind::rank3: {
      expect(27);
      Rank3Field field(grid);
      for (std::size_t i = 0; i < points; ++i)
        for (std::size_t c = 0; c < 27; ++c) field[i].c[c] = real_at(27 * i + c);
      out.field = std::move(field);
      break;
    }
  }
  return out;
}

void save_field(const std::string& path, const FieldFile& f) {
  std::ofstream os(path);
  if (!os) throw field_io_error("cannot open '" + path + "' for writing");
  os << serialize_field(f) << '\n';
}

FieldFile load_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw field_io_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_field(ss.str());
}

namespace {

[[noreturn]] void wrong_kind(const FieldFile& f, const std::string& wanted) {
  throw field_io_error("expected a " + wanted + " field, got '" + to_string(f.kind) + "'");
}

}  // namespace

const ScalarField& as_scalar(const FieldFile& f) {
  if (const auto* p = std::get_if<ScalarField>(&f.field)) return *p;
  wrong_kind(f, "scalar");
}
const CovectorField& as_covector(const FieldFile& f) {
  if (const auto* p = std::get_if<CovectorField>(&f.field)) return *p;
  wrong_kind(f, "covector");
}
const SpinorField& as_spinor(const FieldFile& f) {
  if (const auto* p = std::get_if<SpinorField>(&f.field)) return *p;
  wrong_kind(f, "spinor");
}
const Rank2Field& as_rank2(const FieldFile& f) {
  if (const auto* p = std::get_if<Rank2Field>(&f.field)) return *p;
  wrong_kind(f, "rank2");
}
const Rank3Field& as_rank3(const FieldFile& f) {
  if (const auto* p = std::get_if<Rank3Field>(&f.field)) return *p;
  wrong_kind(f, "rank3");
}

}  // namespace rotel
