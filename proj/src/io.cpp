#include "pontryagin/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace pontryagin::io {

namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) throw Error(Errc::InvalidInput, "cannot serialize a non-finite number");
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // nlohmann objects iterate in key order
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        emit(value, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        emit(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

std::string csv_field(const Json& j) {
  std::string s;
  if (j.is_string()) {
    s = j.get<std::string>();
  } else if (j.is_number_float()) {
    s = format_double(j.get<double>());
  } else {
    emit(j, s);
  }
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::InvalidInput, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double finite_number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw Error(Errc::InvalidInput, what + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw Error(Errc::InvalidInput, what + ": non-finite number");
  return x;
}

}  // namespace

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Complex complex_from_json(const Json& j, const std::string& what) {
  if (j.is_number()) return {finite_number(j, what), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(Errc::InvalidInput, what + ": complex entries are [re, im]");
  return {finite_number(j[0], what), finite_number(j[1], what)};
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(Errc::InvalidInput, what + ": matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  for (const Json& row : j) {
    if (!row.is_array()) throw Error(Errc::InvalidInput, what + ": matrix rows must be arrays");
    if (cols < 0) cols = static_cast<Eigen::Index>(row.size());
    if (static_cast<Eigen::Index>(row.size()) != cols) throw Error(Errc::InvalidInput, what + ": ragged matrix");
  }
  Matrix m(rows, std::max<Eigen::Index>(cols, 0));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      m(i, k) = complex_from_json(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], what);
  return m;
}

Vector vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(Errc::InvalidInput, what + ": vector must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], what);
  return v;
}

Json to_json(const Vessel& v) {
  return Json{{"A1", to_json(v.a1)},         {"A2", to_json(v.a2)},
              {"gramState", to_json(v.state.gram())}, {"phi", to_json(v.phi)},
              {"sigma1", to_json(v.sigma1)}, {"sigma2", to_json(v.sigma2)},
              {"gamma", to_json(v.gamma)},   {"gammaTilde", to_json(v.gamma_tilde)}};
}

Json to_json(const Colligation& c) {
  return Json{{"A", to_json(c.a)}, {"gramState", to_json(c.state.gram())}, {"phi", to_json(c.phi)},
              {"sigma", to_json(c.sigma)}};
}

Json to_json(const Realization& r) {
  return Json{{"A", to_json(r.a)}, {"B", to_json(r.b)}, {"C", to_json(r.c)}, {"D", to_json(r.d)},
              {"gramState", to_json(r.state_gram)}};
}

namespace {

// Empty JSON rows cannot carry a column count; fix shapes from the known dimensions.
Matrix shaped(Matrix m, Eigen::Index rows, Eigen::Index cols) {
  if (m.size() == 0) return Matrix(rows, cols);
  return m;
}

}  // namespace

Vessel vessel_from_json(const Json& doc) {
  const Json& j = payload(doc);
  Vessel v;
  v.a1 = matrix_from_json(field(j, "A1"), "A1");
  v.a2 = matrix_from_json(field(j, "A2"), "A2");
  v.state = IndefiniteSpace(matrix_from_json(field(j, "gramState"), "gramState"));
  v.sigma1 = matrix_from_json(field(j, "sigma1"), "sigma1");
  v.sigma2 = matrix_from_json(field(j, "sigma2"), "sigma2");
  v.gamma = matrix_from_json(field(j, "gamma"), "gamma");
  v.gamma_tilde = matrix_from_json(field(j, "gammaTilde"), "gammaTilde");
  v.phi = shaped(matrix_from_json(field(j, "phi"), "phi"), v.sigma1.rows(), v.a1.rows());
  v.validate_shapes();
  return v;
}

Colligation colligation_from_json(const Json& doc) {
  const Json& j = payload(doc);
  Colligation c;
  c.a = matrix_from_json(field(j, "A"), "A");
  c.state = IndefiniteSpace(matrix_from_json(field(j, "gramState"), "gramState"));
  c.sigma = matrix_from_json(field(j, "sigma"), "sigma");
  c.phi = shaped(matrix_from_json(field(j, "phi"), "phi"), c.sigma.rows(), c.a.rows());
  c.validate_shapes();
  return c;
}

Realization realization_from_json(const Json& doc) {
  const Json& j = payload(doc);
  Realization r;
  r.a = matrix_from_json(field(j, "A"), "A");
  r.d = matrix_from_json(field(j, "D"), "D");
  r.b = shaped(matrix_from_json(field(j, "B"), "B"), r.a.rows(), r.d.cols());
  r.c = shaped(matrix_from_json(field(j, "C"), "C"), r.d.rows(), r.a.rows());
  r.state_gram = j.contains("gramState") ? matrix_from_json(j.at("gramState"), "gramState")
                                          : Matrix(Matrix::Identity(r.a.rows(), r.a.rows()));
  r.validate_shapes();
  return r;
}

const Json& payload(const Json& doc) {
  if (!doc.is_object()) throw Error(Errc::InvalidInput, "document must be a JSON object");
  if (!doc.contains("payload")) return doc;
  if (doc.contains("schemaVersion")) {
    const Json& ver = doc.at("schemaVersion");
    if (!ver.is_string() || ver.get<std::string>() != kSchemaVersion)
      throw Error(Errc::InvalidInput, "unrecognized schemaVersion");
  }
  return doc.at("payload");
}

Json envelope(Json body, std::string_view kind) {
  return Json{{"schemaVersion", kSchemaVersion}, {"kind", kind}, {"payload", std::move(body)},
              {"metadata", Json::object()}};
}

Json parse_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::InvalidInput, what + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

std::string emit_json(const Json& j) {
  std::string out;
  emit(j, out);
  return out;
}

std::string emit_csv(const Json& j) {
  std::vector<Json> rows;
  if (j.is_object() && j.contains("rows") && j.at("rows").is_array()) {
    for (const Json& r : j.at("rows")) rows.push_back(r);
  } else if (j.is_object()) {
    Json flat = Json::object();
    for (const auto& [key, value] : j.items())
      if (!value.is_structured()) flat[key] = value;
    rows.push_back(flat);
  } else {
    throw Error(Errc::UnsupportedFormat, "CSV needs an object report");
  }
  std::set<std::string> keys;
  for (const Json& r : rows) {
    if (!r.is_object()) throw Error(Errc::UnsupportedFormat, "CSV rows must be objects");
    for (const auto& [key, value] : r.items()) keys.insert(key);
  }
  std::string out;
  bool first = true;
  for (const std::string& k : keys) {
    if (!first) out += ',';
    first = false;
    out += csv_field(Json(k));
  }
  out += "\r\n";
  for (const Json& r : rows) {
    first = true;
    for (const std::string& k : keys) {
      if (!first) out += ',';
      first = false;
      if (r.contains(k)) out += csv_field(r.at(k));
    }
    out += "\r\n";
  }
  return out;
}

std::string emit_report(const Json& j, std::string_view format) {
  if (format == "json") return emit_json(j) + "\n";
  if (format == "csv") return emit_csv(j);
  throw Error(Errc::UnsupportedFormat, "unknown report format " + std::string(format));
}

}  // namespace pontryagin::io
