#include "entsort/state_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "entsort/error.hpp"

namespace entsort {

namespace {

using Json = nlohmann::ordered_json;

std::size_t expected_entries(const StateRecord& r) {
  const std::size_t n = r.dim_a * r.dim_b;
  return r.kind == StateKind::pure ? n : n * n;
}

StateRecord parse_record(const Json& j, std::size_t line) {
  if (!j.is_object()) throw FormatError(line, "record is not a JSON object");
  StateRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "pure") r.kind = StateKind::pure;
    else if (kind == "density") r.kind = StateKind::density;
    else throw FormatError(line, "unknown kind '" + kind + "'");
    r.dim_a = j.at("dim_a").get<std::size_t>();
    r.dim_b = j.at("dim_b").get<std::size_t>();
    const Json& data = j.at("data");
    if (!data.is_array()) throw FormatError(line, "data must be an array");
    r.data.reserve(data.size());
    for (const Json& z : data) {
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw FormatError(line, "complex entries must be [re, im] number pairs");
      r.data.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(line, e.what());
  }
  if (r.id.empty()) throw FormatError(line, "empty id");
  if (r.dim_a == 0 || r.dim_b == 0) throw FormatError(line, "dimensions must be positive");
  if (r.data.size() != expected_entries(r))
    throw FormatError(line, "expected " + std::to_string(expected_entries(r)) + " entries, got " +
                                std::to_string(r.data.size()));
  return r;
}

}  // namespace

std::string serialize(const StateFile& file) {
  std::string out;
  Json header;
  header["format"] = kStateFileFormat;
  header["version"] = file.version;
  out += header.dump();
  out += '\n';
  for (const auto& r : file.states) {
    Json j;
    j["id"] = r.id;
    j["kind"] = to_string(r.kind);
    j["dim_a"] = r.dim_a;
    j["dim_b"] = r.dim_b;
    Json data = Json::array();
    for (const Complex& z : r.data) data.push_back(Json::array({z.real(), z.imag()}));
    j["data"] = std::move(data);
    out += j.dump();
    out += '\n';
  }
  return out;
}

StateFile parse_state_file(std::string_view text) {
  StateFile file;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(line_no, e.what());
    }
    if (!have_header) {
      if (!j.is_object() || j.value("format", std::string{}) != kStateFileFormat)
        throw FormatError(line_no, "missing entsort-states header");
      file.version = j.value("version", std::string{});
      if (file.version != kStateFileVersion)
        throw FormatError(line_no, "unsupported version '" + file.version + "'");
      have_header = true;
      continue;
    }
    file.states.push_back(parse_record(j, line_no));
  }
  if (!have_header) throw FormatError(line_no, "empty state file");
  return file;
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state_file(buffer.str());
}

void write_state_file(const std::string& path, const StateFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize(file);
}

StateRecord to_record(std::string id, const AnyState& state) {
  StateRecord r;
  r.id = std::move(id);
  r.dim_a = dim_a(state);
  r.dim_b = dim_b(state);
  if (const auto* psi = std::get_if<PureState>(&state)) {
    r.kind = StateKind::pure;
    r.data.assign(psi->amplitudes().begin(), psi->amplitudes().end());
  } else {
    const ComplexMatrix& m = std::get<DensityState>(state).matrix();
    r.kind = StateKind::density;
    r.data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) r.data.push_back(m(i, j));
  }
  return r;
}

AnyState to_state(const StateRecord& record, const Tolerances& tol) {
  if (record.data.size() != expected_entries(record))
    throw DimensionError("record '" + record.id + "' has the wrong number of entries");
  if (record.kind == StateKind::pure) {
    ComplexVector v = Eigen::Map<const ComplexVector>(record.data.data(),
                                                      static_cast<Eigen::Index>(record.data.size()));
    return PureState(record.dim_a, record.dim_b, std::move(v), tol);
  }
  const auto n = static_cast<Eigen::Index>(record.dim_a * record.dim_b);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = record.data[static_cast<std::size_t>(i * n + j)];
  return DensityState(record.dim_a, record.dim_b, std::move(m), tol);
}

}  // namespace entsort
