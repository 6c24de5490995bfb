#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entsort/numerics.hpp"
#include "entsort/schmidt.hpp"
#include "entsort/states.hpp"
#include "entsort/tolerance.hpp"

namespace entsort {

// Line-delimited JSON. The first line is the header
//   {"format":"entsort-states","version":"1"}
// followed by one record per line
//   {"id":"bell-0","kind":"pure","dim_a":2,"dim_b":2,"data":[[re,im],...]}
// Pure data holds dim_a*dim_b amplitudes, density data the (dim_a*dim_b)^2
// matrix entries, both row-major.

inline constexpr std::string_view kStateFileFormat = "entsort-states";
inline constexpr std::string_view kStateFileVersion = "1";

class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct StateRecord {
  std::string id;
  StateKind kind = StateKind::pure;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::vector<Complex> data;
};

struct StateFile {
  std::string version{kStateFileVersion};
  std::vector<StateRecord> states;
};

std::string serialize(const StateFile& file);

/// Parses the text form. Structural problems throw FormatError; the records
/// are not validated as states here (see to_state).
StateFile parse_state_file(std::string_view text);

StateFile read_state_file(const std::string& path);
void write_state_file(const std::string& path, const StateFile& file);

StateRecord to_record(std::string id, const AnyState& state);

/// Validates norm / trace / hermiticity; throws DimensionError or DomainError.
AnyState to_state(const StateRecord& record, const Tolerances& tol = kDefaultTolerances);

}  // namespace entsort
