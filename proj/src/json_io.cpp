#include "holo/json_io.hpp"

#include "holo/errors.hpp"

#include <fstream>
#include <sstream>

namespace holo {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, where + ": " + what);
}

Index parse_count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) bad(where, "expected a non-negative integer");
  const auto v = j.get<long long>();
  if (v < 0) bad(where, "expected a non-negative integer");
  return static_cast<Index>(v);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field \"") + key + "\"");
  return *it;
}

}  // namespace

Complex parse_complex(const Json& j, const std::string& where) {
  double re = 0.0, im = 0.0;
  if (j.is_number()) {
    re = j.get<double>();
  } else if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    re = j[0].get<double>();
    im = j[1].get<double>();
  } else {
    bad(where, "expected a number or [re, im]");
  }
  if (!std::isfinite(re) || !std::isfinite(im)) bad(where, "non-finite entry");
  return {re, im};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Mat parse_matrix(const Json& j, const std::string& where, Index rows, Index cols) {
  if (!j.is_array() || j.empty()) bad(where, "expected a non-empty array of rows");
  const Index r = static_cast<Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) bad(where, "expected rows to be non-empty arrays");
  const Index c = static_cast<Index>(j[0].size());
  if (rows >= 0 && r != rows) bad(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(r));
  if (cols >= 0 && c != cols) bad(where, "expected " + std::to_string(cols) + " columns, got " + std::to_string(c));
  Mat m(r, c);
  for (Index i = 0; i < r; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != c) bad(where, "ragged rows");
    for (Index k = 0; k < c; ++k) {
      m(i, k) = parse_complex(row[static_cast<std::size_t>(k)],
                              where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vec& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

TaylorPencil parse_pencil_doc(const Json& j) {
  const Complex center = parse_complex(field(j, "center", "pencil"), "pencil.center");
  const Index n = parse_count(field(j, "dim", "pencil"), "pencil.dim");
  if (n < 1) bad("pencil.dim", "must be positive");
  const Json& cs = field(j, "coefficients", "pencil");
  if (!cs.is_array() || cs.empty()) bad("pencil.coefficients", "expected a non-empty array of matrices");
  std::vector<Mat> coeffs;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    coeffs.push_back(parse_matrix(cs[k], "pencil.coefficients[" + std::to_string(k) + "]", n, n));
  }
  return TaylorPencil(center, std::move(coeffs));
}

Json pencil_to_json(const TaylorPencil& p) {
  Json cs = Json::array();
  for (const Mat& m : p.coefficients()) cs.push_back(matrix_to_json(m));
  return Json{{"center", complex_to_json(p.center())}, {"dim", p.dim()}, {"coefficients", cs}};
}

ModelDoc parse_model_doc(const Json& j) {
  const Index n = parse_count(field(j, "dim", "model"), "model.dim");
  if (n < 1) bad("model.dim", "must be positive");
  const Json& ar = field(j, "ar", "model");
  if (!ar.is_array() || ar.empty()) bad("model.ar", "expected a non-empty array of matrices");
  std::vector<Mat> phi;
  for (std::size_t k = 0; k < ar.size(); ++k) phi.push_back(parse_matrix(ar[k], "model.ar[" + std::to_string(k) + "]", n, n));
  ModelDoc doc{make_ar_model(std::move(phi)), std::nullopt};
  if (j.contains("noise")) {
    const Json& nz = j["noise"];
    NoiseSpec spec;
    spec.covariance = parse_matrix(field(nz, "covariance", "model.noise"), "model.noise.covariance", n, n);
    if (nz.contains("seed")) {
      const Json& s = nz["seed"];
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
        bad("model.noise.seed", "expected a non-negative integer");
      }
      spec.seed = s.get<std::uint64_t>();
    }
    validate_noise(spec, n);
    doc.noise = spec;
  }
  return doc;
}

Json expansion_to_json(const LaurentExpansion& e) {
  Json coeffs = Json::object();
  for (int k = -e.order(); k <= e.truncation(); ++k) coeffs[std::to_string(k)] = matrix_to_json(e.coefficient(k));
  return Json{{"center", complex_to_json(e.center())}, {"m", e.order()}, {"J", e.truncation()}, {"N", coeffs}};
}

LaurentExpansion parse_expansion(const Json& j) {
  const Complex center = parse_complex(field(j, "center", "expansion"), "expansion.center");
  const Index m = parse_count(field(j, "m", "expansion"), "expansion.m");
  const Index J = parse_count(field(j, "J", "expansion"), "expansion.J");
  if (m < 1) bad("expansion.m", "must be positive");
  const Json& nj = field(j, "N", "expansion");
  std::vector<Mat> coeffs;
  Index n = -1;
  for (long k = -static_cast<long>(m); k <= static_cast<long>(J); ++k) {
    const std::string key = std::to_string(k);
    Mat c = parse_matrix(field(nj, key.c_str(), "expansion.N"), "expansion.N." + key, n, n);
    if (c.rows() != c.cols()) bad("expansion.N." + key, "coefficient must be square");
    n = c.rows();
    coeffs.push_back(std::move(c));
  }
  return LaurentExpansion(center, static_cast<int>(m), std::move(coeffs));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

}  // namespace holo
