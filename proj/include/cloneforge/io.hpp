#pragma once

// File formats for the CLI: cloner descriptors, Choi matrices and reports.
// Everything is JSON (CSV for sweep curves) with floats printed to 17
// significant digits, so identical inputs reproduce identical bytes and
// values round-trip losslessly.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cloneforge/choi_channel.hpp"
#include "cloneforge/cloner.hpp"
#include "cloneforge/optimizer.hpp"

namespace cloneforge {

// Shortest-lossless text form of a double (17 significant digits).
std::string format_double(double x);

// Serialization of a coefficient vector: d, d^2 [re, im] pairs in
// (r,s) row-major order, plus free-form string metadata.
struct ClonerDescriptor {
    int d = 0;
    Vector coefficients;
    std::map<std::string, std::string> metadata;
};

ClonerDescriptor load_descriptor(const std::string& path);
ClonerDescriptor parse_descriptor(const std::string& json_text);
void write_descriptor(std::ostream& os, const ClonerDescriptor& desc);

// Norm is validated to 1e-9 on conversion, then renormalized exactly.
CoefficientVector to_coefficients(const ClonerDescriptor& desc);
ClonerDescriptor to_descriptor(const CoefficientVector& a,
                               std::map<std::string, std::string> metadata = {});

// Choi matrix files: d plus d^6 row-major [re, im] pairs. Loading
// enforces shape and Hermiticity only; positivity is the caller's call.
struct RawChoi {
    int d = 0;
    Matrix m;
};

RawChoi load_choi(const std::string& path);
void write_choi(std::ostream& os, int d, const Matrix& m);

struct VerificationReport {
    double tp_residual = 0.0;
    double covariance_max = 0.0;
    double projector_residual = 0.0;
    int rank = 0;
    bool has_strong_cov = false;  // only meaningful for pure (descriptor) cloners
    double strong_cov_residual = 0.0;
    double tolerance = 0.0;
    bool pass_tp = false;
    bool pass_covariant = false;
    bool pass_extremal = false;
    bool pass_strong_cov = false;
    bool overall = false;
};

void write_verification(std::ostream& os, const VerificationReport& rep);

void write_fidelity_report(std::ostream& os, const FidelityReport& rep, const std::string& ensemble);

void write_tradeoff_point(std::ostream& os, const TradeoffPoint& pt, const std::string& ensemble);

// CSV: header lambda,F_B,F_E,degenerate then one row per point.
void write_curve_csv(std::ostream& os, const TradeoffCurve& curve);
void write_curve_json(std::ostream& os, const TradeoffCurve& curve);

}  // namespace cloneforge
