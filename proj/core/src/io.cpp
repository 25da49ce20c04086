#include "twopoint/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "twopoint/errors.hpp"

namespace twopoint {
namespace {

using nlohmann::ordered_json;

// JSON has no spelling for non-finite values.
ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

ordered_json complex_pair(cplx z) { return ordered_json::array({number(z.real()), number(z.imag())}); }

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_field(const std::string& s, const char* what) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("csv: bad ") + what + " field '" + s + "'");
  }
}

void expect_header(std::istream& is, const std::string& header) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw InvalidArgument("csv: expected header '" + header + "'");
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_symbol_csv(std::ostream& os, const BoundarySymbol& phi) {
  os << "theta,re,im\n";
  for (int j = 0; j < phi.size(); ++j) {
    os << format_number(node_angle(j, phi.size())) << ',' << format_number(phi[j].real()) << ','
       << format_number(phi[j].imag()) << '\n';
  }
}

BoundarySymbol read_symbol_csv(std::istream& is, std::string description) {
  expect_header(is, "theta,re,im");
  std::vector<double> theta;
  std::vector<cplx> values;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 3) throw InvalidArgument("csv: symbol rows need theta,re,im");
    theta.push_back(parse_field(f[0], "theta"));
    values.emplace_back(parse_field(f[1], "re"), parse_field(f[2], "im"));
  }
  const int m = static_cast<int>(values.size());
  if (!valid_sample_count(m)) {
    throw InvalidArgument("csv: symbol row count must be a power of two >= 64");
  }
  for (int j = 0; j < m; ++j) {
    if (std::abs(theta[static_cast<size_t>(j)] - node_angle(j, m)) > 1e-9) {
      throw InvalidArgument("csv: row " + std::to_string(j) + " is off the uniform grid");
    }
  }
  return BoundarySymbol(std::move(values), std::move(description));
}

void write_truncation_csv(std::ostream& os, const Eigen::MatrixXcd& a) {
  os << "j,k,re,im\n";
  for (Eigen::Index j = 0; j < a.rows(); ++j)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      os << j << ',' << k << ',' << format_number(a(j, k).real()) << ','
         << format_number(a(j, k).imag()) << '\n';
}

Eigen::MatrixXcd read_truncation_csv(std::istream& is) {
  expect_header(is, "j,k,re,im");
  struct Entry {
    long j, k;
    cplx v;
  };
  std::vector<Entry> entries;
  long n = 0;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 4) throw InvalidArgument("csv: truncation rows need j,k,re,im");
    const double j = parse_field(f[0], "j");
    const double k = parse_field(f[1], "k");
    if (j < 0 || k < 0 || j != std::floor(j) || k != std::floor(k)) {
      throw InvalidArgument("csv: indices must be nonnegative integers");
    }
    entries.push_back({static_cast<long>(j), static_cast<long>(k),
                       {parse_field(f[2], "re"), parse_field(f[3], "im")}});
    n = std::max({n, entries.back().j + 1, entries.back().k + 1});
  }
  if (static_cast<long>(entries.size()) != n * n) {
    throw InvalidArgument("csv: truncation is not a complete square matrix");
  }
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& e : entries) a(e.j, e.k) = e.v;
  return a;
}

std::string truncation_meta_json(const TruncationMeta& meta) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["a"] = complex_pair(meta.pair.a());
  j["b"] = complex_pair(meta.pair.b());
  j["t"] = meta.t.is_infinite() ? ordered_json("inf") : complex_pair(meta.t.value());
  j["N"] = meta.n;
  j["M"] = meta.m;
  j["symbol"] = meta.symbol;
  return j.dump(2) + "\n";
}

void write_portrait_csv(std::ostream& os, const SpectralPortrait& p) {
  os << "re_lambda,im_lambda,sigma_min\n";
  for (int i_im = 0; i_im < p.steps_im; ++i_im) {
    for (int i_re = 0; i_re < p.steps_re; ++i_re) {
      const cplx z = p.point(i_re, i_im);
      os << format_number(z.real()) << ',' << format_number(z.imag()) << ','
         << format_number(p.at(i_re, i_im)) << '\n';
    }
  }
}

std::string to_json(const IntervalPrediction& p) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["a"] = complex_pair(p.a);
  j["b"] = complex_pair(p.b);
  j["c"] = complex_pair(p.c);
  j["beta"] = number(p.beta);
  j["m"] = number(p.m);
  j["M"] = number(p.m_sup);
  j["interval"] = p.nonempty ? ordered_json::array({number(p.lower()), number(p.upper())})
                             : ordered_json(nullptr);
  j["endpoint_flags"] = ordered_json::array({p.endpoint_flags[0], p.endpoint_flags[1]});
  j["degenerate_point"] = p.degenerate_point ? number(*p.degenerate_point) : ordered_json(nullptr);
  return j.dump(2) + "\n";
}

std::string to_json(const OuterEigenpair& e) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["lambda"] = number(e.lambda);
  j["s"] = complex_pair(e.s);
  j["residual"] = number(e.residual);
  j["N"] = e.n;
  j["M"] = e.m;
  ordered_json coeffs = ordered_json::array();
  for (Eigen::Index k = 0; k < e.g_coeffs.coefficients.size(); ++k) {
    coeffs.push_back(complex_pair(e.g_coeffs.coefficients(k)));
  }
  j["G_coeffs"] = std::move(coeffs);
  return j.dump(2) + "\n";
}

}  // namespace twopoint
