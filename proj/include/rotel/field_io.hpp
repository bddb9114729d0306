#pragma once

// JSON field files.
//
// {
//   "grid": {"n": [nx,ny,nz] or [nt,nx,ny,nz], "L": [...]},
//   "kind": "scalar" | "covector" | "spinor" | "coframe" | "rank2" | "rank3",
//   "data": [...]
// }
//
// Data is flat in grid order (t, x1, x2, x3) with per-point components
// innermost; complex numbers appear as [re, im] pairs. Serialization
// round-trips doubles bit-exactly.

#include <iosfwd>
#include <string>
#include <variant>

#include "rotel/grid.hpp"

namespace rotel {

enum class FieldKind { scalar, covector, spinor, coframe, rank2, rank3 };

FieldKind field_kind_from_string(const std::string& s);
std::string to_string(FieldKind k);

using AnyField =
    std::variant<ScalarField, CovectorField, SpinorField, Rank2Field, Rank3Field>;

struct FieldFile {
  FieldKind kind;
  AnyField field;
};

class field_io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string serialize_field(const FieldFile& f);
FieldFile parse_field(const std::string& text);

void save_field(const std::string& path, const FieldFile& f);
FieldFile load_field(const std::string& path);

// Typed accessors; throw field_io_error naming the expected kind.
const ScalarField& as_scalar(const FieldFile& f);
const CovectorField& as_covector(const FieldFile& f);
const SpinorField& as_spinor(const FieldFile& f);
const Rank2Field& as_rank2(const FieldFile& f);     // also used for coframes
const Rank3Field& as_rank3(const FieldFile& f);

}  // namespace rotel
