#pragma once

// CSV and JSON artifacts. CSV numbers use 17 significant digits and JSON the
// shortest round-trip form, so files reload exactly and reruns are identical.

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "twopoint/relative_spectrum.hpp"
#include "twopoint/spectra.hpp"
#include "twopoint/symbols.hpp"
#include "twopoint/toeplitz.hpp"

namespace twopoint {

inline constexpr int kSchemaVersion = 1;

/// %.17g
std::string format_number(double x);

/// Header `theta,re,im`, one row per node in angle order.
void write_symbol_csv(std::ostream& os, const BoundarySymbol& phi);
/// Reads the format above. Rows must sit on the uniform grid of their count
/// (to 1e-9 in angle); throws InvalidArgument otherwise.
BoundarySymbol read_symbol_csv(std::istream& is, std::string description = "csv");

/// Header `j,k,re,im`, row-major over the matrix.
void write_truncation_csv(std::ostream& os, const Eigen::MatrixXcd& a);
Eigen::MatrixXcd read_truncation_csv(std::istream& is);

/// {schema_version, a, b, t, N, M, symbol}; t is [re, im] or "inf".
std::string truncation_meta_json(const TruncationMeta& meta);

/// Header `re_lambda,im_lambda,sigma_min`, row-major (real part fastest).
void write_portrait_csv(std::ostream& os, const SpectralPortrait& p);

/// {schema_version, a, b, c, beta, m, M, interval, endpoint_flags, degenerate_point}
std::string to_json(const IntervalPrediction& p);
/// {schema_version, lambda, s, residual, G_coeffs}
std::string to_json(const OuterEigenpair& e);

}  // namespace twopoint
