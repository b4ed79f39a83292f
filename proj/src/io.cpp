#include "cloneforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cloneforge {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& err) {
        throw std::runtime_error("malformed JSON in '" + path + "': " + err.what());
    }
    return j;
}

Cx parse_complex_pair(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw std::runtime_error(std::string(what) + ": entries must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

void emit_complex(std::ostream& os, Cx z) {
    os << '[' << format_double(z.real()) << ", " << format_double(z.imag()) << ']';
}

void emit_string(std::ostream& os, const std::string& s) {
    os << '"';
    for (char c : s) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            default: os << c;
        }
    }
    os << '"';
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

ClonerDescriptor parse_descriptor(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw std::runtime_error(std::string("malformed descriptor JSON: ") + err.what());
    }
    if (!j.contains("d") || !j["d"].is_number_integer()) {
        throw std::runtime_error("descriptor: missing integer field 'd'");
    }
    const int d = j["d"].get<int>();
    check_dim(d);
    if (!j.contains("coefficients") || !j["coefficients"].is_array() ||
        j["coefficients"].size() != static_cast<std::size_t>(d) * d) {
        throw std::runtime_error("descriptor: 'coefficients' must list d^2 [re, im] pairs");
    }
    ClonerDescriptor desc;
    desc.d = d;
    desc.coefficients = Vector(static_cast<Eigen::Index>(d) * d);
    for (std::size_t i = 0; i < j["coefficients"].size(); ++i) {
        desc.coefficients(static_cast<Eigen::Index>(i)) =
            parse_complex_pair(j["coefficients"][i], "descriptor coefficients");
    }
    if (j.contains("metadata")) {
        for (const auto& [key, value] : j["metadata"].items()) {
            desc.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
        }
    }
    return desc;
}

ClonerDescriptor load_descriptor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_descriptor(buf.str());
}

void write_descriptor(std::ostream& os, const ClonerDescriptor& desc) {
    os << "{\n  \"d\": " << desc.d << ",\n  \"coefficients\": [\n";
    for (Eigen::Index i = 0; i < desc.coefficients.size(); ++i) {
        os << "    ";
        emit_complex(os, desc.coefficients(i));
        os << (i + 1 < desc.coefficients.size() ? ",\n" : "\n");
    }
    os << "  ],\n  \"metadata\": {";
    bool first = true;
    for (const auto& [key, value] : desc.metadata) {
        os << (first ? "\n    " : ",\n    ");
        emit_string(os, key);
        os << ": ";
        emit_string(os, value);
        first = false;
    }
    os << (first ? "}" : "\n  }") << "\n}\n";
}

CoefficientVector to_coefficients(const ClonerDescriptor& desc) {
    const double norm = desc.coefficients.norm();
    if (std::abs(norm - 1.0) > 1e-9) {
        throw std::runtime_error("descriptor coefficients have norm " + format_double(norm) +
                                 ", expected 1 within 1e-9");
    }
    return make_coefficients(desc.d, desc.coefficients / norm);
}

ClonerDescriptor to_descriptor(const CoefficientVector& a,
                               std::map<std::string, std::string> metadata) {
    return {a.d, a.a, std::move(metadata)};
}

RawChoi load_choi(const std::string& path) {
    const json j = read_json_file(path);
    if (!j.contains("d") || !j["d"].is_number_integer()) {
        throw std::runtime_error("choi file: missing integer field 'd'");
    }
    const int d = j["d"].get<int>();
    check_dim(d);
    const long long n = static_cast<long long>(d) * d * d;
    if (!j.contains("matrix") || !j["matrix"].is_array() ||
        j["matrix"].size() != static_cast<std::size_t>(n) * n) {
        throw std::runtime_error("choi file: 'matrix' must list d^6 [re, im] pairs (row-major)");
    }
    Matrix m(n, n);
    std::size_t k = 0;
    for (long long row = 0; row < n; ++row)
        for (long long col = 0; col < n; ++col)
            m(row, col) = parse_complex_pair(j["matrix"][k++], "choi matrix");
    if ((m - m.adjoint()).norm() > 1e-8) {
        throw std::runtime_error("choi file: matrix is not Hermitian");
    }
    return {d, std::move(m)};
}

void write_choi(std::ostream& os, int d, const Matrix& m) {
    const long long n = static_cast<long long>(d) * d * d;
    os << "{\n  \"d\": " << d << ",\n  \"matrix\": [\n";
    for (long long row = 0; row < n; ++row) {
        for (long long col = 0; col < n; ++col) {
            os << "    ";
            emit_complex(os, m(row, col));
            os << (row == n - 1 && col == n - 1 ? "\n" : ",\n");
        }
    }
    os << "  ]\n}\n";
}

void write_verification(std::ostream& os, const VerificationReport& rep) {
    os << "{\n";
    os << "  \"tp_residual\": " << format_double(rep.tp_residual) << ",\n";
    os << "  \"covariance_max\": " << format_double(rep.covariance_max) << ",\n";
    os << "  \"projector_residual\": " << format_double(rep.projector_residual) << ",\n";
    os << "  \"rank\": " << rep.rank << ",\n";
    if (rep.has_strong_cov) {
        os << "  \"strong_cov_residual\": " << format_double(rep.strong_cov_residual) << ",\n";
    } else {
        os << "  \"strong_cov_residual\": null,\n";
    }
    os << "  \"tolerance\": " << format_double(rep.tolerance) << ",\n";
    os << "  \"pass\": {\n";
    os << "    \"trace_preserving\": " << (rep.pass_tp ? "true" : "false") << ",\n";
    os << "    \"covariant\": " << (rep.pass_covariant ? "true" : "false") << ",\n";
    os << "    \"extremal\": " << (rep.pass_extremal ? "true" : "false");
    if (rep.has_strong_cov) {
        os << ",\n    \"strong_covariance\": " << (rep.pass_strong_cov ? "true" : "false") << "\n";
    } else {
        os << "\n";
    }
    os << "  },\n";
    os << "  \"overall\": " << (rep.overall ? "true" : "false") << "\n";
    os << "}\n";
}

void write_fidelity_report(std::ostream& os, const FidelityReport& rep,
                           const std::string& ensemble) {
    os << "{\n  \"ensemble\": ";
    emit_string(os, ensemble);
    os << ",\n  \"average\": {\"clone1\": " << format_double(rep.average1)
       << ", \"clone2\": " << format_double(rep.average2) << "}";
    if (!rep.per_state.empty()) {
        os << ",\n  \"per_state\": [\n";
        for (std::size_t i = 0; i < rep.per_state.size(); ++i) {
            const auto& row = rep.per_state[i];
            os << "    {\"state\": ";
            emit_string(os, row.state);
            os << ", \"clone1\": " << format_double(row.clone1)
               << ", \"clone2\": " << format_double(row.clone2) << "}"
               << (i + 1 < rep.per_state.size() ? ",\n" : "\n");
        }
        os << "  ]";
    }
    os << "\n}\n";
}

void write_tradeoff_point(std::ostream& os, const TradeoffPoint& pt, const std::string& ensemble) {
    os << "{\n  \"ensemble\": ";
    emit_string(os, ensemble);
    os << ",\n  \"lambda\": " << format_double(pt.lambda);
    os << ",\n  \"F_B\": " << format_double(pt.f_b);
    os << ",\n  \"F_E\": " << format_double(pt.f_e);
    os << ",\n  \"degenerate\": " << (pt.degenerate ? "true" : "false");
    os << ",\n  \"real_nonnegative\": " << (pt.real_nonnegative ? "true" : "false");
    // nested descriptor, loadable by `gen --coeffs` / `eval` / `verify`
    os << ",\n  \"descriptor\": {\n    \"d\": " << pt.a_opt.d << ",\n    \"coefficients\": [\n";
    for (Eigen::Index i = 0; i < pt.a_opt.a.size(); ++i) {
        os << "      ";
        emit_complex(os, pt.a_opt.a(i));
        os << (i + 1 < pt.a_opt.a.size() ? ",\n" : "\n");
    }
    os << "    ],\n    \"metadata\": {\n      \"ensemble\": ";
    emit_string(os, ensemble);
    os << ",\n      \"lambda\": ";
    emit_string(os, format_double(pt.lambda));
    os << "\n    }\n  }\n}\n";
}

void write_curve_csv(std::ostream& os, const TradeoffCurve& curve) {
    os << "lambda,F_B,F_E,degenerate\n";
    for (const auto& pt : curve.points) {
        os << format_double(pt.lambda) << ',' << format_double(pt.f_b) << ','
           << format_double(pt.f_e) << ',' << (pt.degenerate ? 1 : 0) << '\n';
    }
}

void write_curve_json(std::ostream& os, const TradeoffCurve& curve) {
    os << "{\n  \"ensemble\": ";
    emit_string(os, curve.ensemble);
    os << ",\n  \"points\": [\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& pt = curve.points[i];
        os << "    {\"lambda\": " << format_double(pt.lambda)
           << ", \"F_B\": " << format_double(pt.f_b) << ", \"F_E\": " << format_double(pt.f_e)
           << ", \"degenerate\": " << (pt.degenerate ? "true" : "false") << "}"
           << (i + 1 < curve.points.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
}

}  // namespace cloneforge
