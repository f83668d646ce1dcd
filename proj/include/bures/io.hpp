#ifndef BURES_IO_HPP
#define BURES_IO_HPP

// Matrix files: JSON objects {"dim": N, "re": [[...]], "im": [[...]]} with the
// real and imaginary parts as separate N x N row-major arrays. "im" may be
// omitted for real matrices.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bures/matcore.hpp"
#include "bures/states.hpp"

namespace bures {
namespace io {

using json = nlohmann::json;

inline ComplexMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("re")) {
    throw validation_error("matrix file must be an object with \"dim\" and \"re\"");
  }
  const auto& dim_field = doc.at("dim");
  if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1) {
    throw validation_error("matrix file: \"dim\" must be a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(dim_field.get<long long>());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  auto read_part = [&](const char* key, bool imaginary) {
    const auto& rows = doc.at(key);
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
      throw validation_error(std::string("matrix file: \"") + key + "\" must have dim rows");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        throw validation_error(std::string("matrix file: every \"") + key + "\" row must have dim entries");
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto& v = row[static_cast<std::size_t>(j)];
        if (!v.is_number()) throw validation_error(std::string("matrix file: non-numeric entry in \"") + key + "\"");
        if (imaginary) {
          m(i, j).imag(v.get<double>());
        } else {
          m(i, j).real(v.get<double>());
        }
      }
    }
  };
  read_part("re", false);
  if (doc.contains("im")) read_part("im", true);
  return m;
}

inline json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array();
    json ir = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ir.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open matrix file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw validation_error("matrix file " + path + " is not valid JSON: " + e.what());
  }
  return matrix_from_json(doc);
}

inline void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write matrix file " + path);
  out << matrix_to_json(m).dump(2) << '\n';
}

namespace detail {

inline double parse_number(const std::string& text, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw validation_error("cannot parse number '" + text + "' in " + context);
  }
  return v;
}

}  // namespace detail

/// A state argument: either a matrix file path, or a built-in of the form
///   @maxmixed:N   @basis:N:k   @ghz   @w   @werner-ghz:p   @werner-w:p
inline DensityMatrix load_state(const std::string& source) {
  if (source.empty() || source.front() != '@') return DensityMatrix::from(read_matrix_file(source));

  std::vector<std::string> parts;
  std::stringstream ss(source.substr(1));
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.empty()) throw validation_error("empty built-in state name");
  const std::string& name = parts[0];
  auto arg = [&](std::size_t i) {
    if (parts.size() <= i) throw validation_error("built-in state " + source + " is missing an argument");
    return detail::parse_number(parts[i], source);
  };
  auto dim_arg = [&](std::size_t i) {
    const double v = arg(i);
    if (v < 1 || v > 4096 || v != std::floor(v)) throw validation_error("bad dimension in " + source);
    return static_cast<Eigen::Index>(v);
  };

  if (name == "maxmixed") return DensityMatrix::maximally_mixed(dim_arg(1));
  if (name == "basis") {
    const auto n = dim_arg(1);
    const double k = arg(2);
    if (k < 0 || k >= static_cast<double>(n) || k != std::floor(k)) throw validation_error("bad basis index in " + source);
    ComplexVector v = ComplexVector::Zero(n);
    v(static_cast<Eigen::Index>(k)) = 1.0;
    return DensityMatrix::pure(v);
  }
  if (name == "ghz") return DensityMatrix::pure(ghz_vector());
  if (name == "w") return DensityMatrix::pure(w_vector());
  if (name == "werner-ghz") return werner(werner_kind::ghz, arg(1));
  if (name == "werner-w") return werner(werner_kind::w, arg(1));
  throw validation_error("unknown built-in state " + source);
}

/// Comma-separated list of reals.
inline RealVector parse_vector(const std::string& text, const std::string& context) {
  std::vector<double> values;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) values.push_back(detail::parse_number(item, context));
  RealVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

/// %.17g: round-trips every double.
inline std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// v rounded to `digits` significant digits.
inline double round_significant(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return std::strtod(buf, nullptr);
}

}  // namespace io
}  // namespace bures

#endif  // BURES_IO_HPP
