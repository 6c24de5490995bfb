#include "entsort/tolerance.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace entsort {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double* field(Tolerances& t, std::string_view name) {
  if (name == "ortho") return &t.ortho;
  if (name == "recon") return &t.recon;
  if (name == "drop") return &t.drop;
  if (name == "rank") return &t.rank;
  if (name == "cross") return &t.cross;
  if (name == "majorization") return &t.majorization;
  if (name == "eigen_floor") return &t.eigen_floor;
  if (name == "entropy_tie") return &t.entropy_tie;
  if (name == "pure_norm") return &t.pure_norm;
  return nullptr;
}

}  // namespace

Tolerances parse_tolerances(std::string_view overrides) {
  Tolerances t;
  while (!overrides.empty()) {
    const auto comma = overrides.find(',');
    const auto item = trim(overrides.substr(0, comma));
    overrides = comma == std::string_view::npos ? std::string_view{} : overrides.substr(comma + 1);
    if (item.empty()) continue;

    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("tolerance override without '=': " + std::string(item));
    const auto name = trim(item.substr(0, eq));
    const auto text = trim(item.substr(eq + 1));
    double* slot = field(t, name);
    if (slot == nullptr) throw std::invalid_argument("unknown tolerance: " + std::string(name));

    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !(value >= 0.0))
      throw std::invalid_argument("bad value for tolerance " + std::string(name) + ": " +
                                  std::string(text));
    *slot = value;
  }
  return t;
}

Tolerances tolerances_from_env() {
  const char* env = std::getenv("ENTSORT_TOLERANCE");
  if (env == nullptr) return Tolerances{};
  return parse_tolerances(env);
}

}  // namespace entsort
