#pragma once

// Serialization of the domain types (complex numbers as [re, im] pairs),
// CSV writers for matrices and probe traces, the FNV config hash, and the
// global tolerance scale.  JSON objects use the library's sorted-key
// representation, so identical data serializes identically.

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hardylab/comp_op.hpp"
#include "hardylab/eigen.hpp"
#include "hardylab/halfplane.hpp"
#include "hardylab/moebius.hpp"
#include "hardylab/series.hpp"

namespace hardylab {

using Json = nlohmann::json;

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

inline Json to_json(const CoefficientFunction& f) {
    Json arr = Json::array();
    for (const Complex& c : f.coeffs) arr.push_back(to_json(c));
    return arr;
}

inline CoefficientFunction coefficient_function_from_json(const Json& j) {
    std::vector<Complex> c;
    c.reserve(j.size());
    for (const auto& e : j) c.push_back(complex_from_json(e));
    return CoefficientFunction(std::move(c));
}

inline Json to_json(const MoebiusMap& m) {
    return Json{{"alpha", to_json(m.alpha)},
                {"beta", to_json(m.beta)},
                {"gamma", to_json(m.gamma)},
                {"delta", to_json(m.delta)},
                {"domain", m.domain == Domain::Disk ? "disk" : "half_plane"}};
}

inline MoebiusMap moebius_from_json(const Json& j) {
    MoebiusMap m;
    m.alpha = complex_from_json(j.at("alpha"));
    m.beta = complex_from_json(j.at("beta"));
    m.gamma = complex_from_json(j.at("gamma"));
    m.delta = complex_from_json(j.at("delta"));
    m.domain = j.at("domain") == "disk" ? Domain::Disk : Domain::HalfPlane;
    return m;
}

inline Json to_json(const RiemannPoint& p) {
    if (p.at_infinity) return Json("infinity");
    return to_json(p.value);
}

inline Json to_json(const SymbolClass& cls) {
    Json j{{"kind", to_string(cls.kind)},
           {"fixed_points", Json::array({to_json(cls.fixed.points[0]),
                                         to_json(cls.fixed.points[1])})},
           {"degenerate_identity", cls.fixed.degenerate_identity},
           {"derivative_at_attracting", to_json(cls.derivative_at_attracting)},
           {"universal_translate", cls.universal_translate}};
    if (cls.lambda_region)
        j["lambda_region"] = Json{{"inner", cls.lambda_region->inner},
                                  {"outer", cls.lambda_region->outer}};
    return j;
}

inline Json to_json(const OrbitTrace& tr) {
    Json vals = Json::array();
    for (const Complex& v : tr.values) vals.push_back(to_json(v));
    Json j{{"w", to_json(tr.w)},
           {"values", vals},
           {"verdict", to_string(tr.verdict)},
           {"low_confidence", tr.low_confidence}};
    if (tr.limit) j["limit"] = to_json(*tr.limit);
    return j;
}

inline Json to_json(const AfScanResult& res) {
    Json j{{"grid_size", res.grid.size()},
           {"hits", res.hits},
           {"all_hits", res.all_hits},
           {"powers_consistent", res.powers_consistent},
           {"verified_powers", res.verified_powers}};
    if (res.fitted_c) j["fitted_c"] = *res.fitted_c;
    return j;
}

// ---------------------------------------------------------------------------
// CSV writers

// Matrix cells are "re,im"; the pair is quoted so the inner comma survives
// standard CSV parsing.
inline void write_matrix_csv(const OperatorMatrix& M, std::ostream& os) {
    for (std::size_t j = 0; j <= M.order; ++j) {
        for (std::size_t k = 0; k <= M.order; ++k) {
            const Complex v = M.at(j, k);
            os << (k ? "," : "") << '"' << v.real() << ',' << v.imag() << '"';
        }
        os << '\n';
    }
}

inline void write_orbit_csv(const OrbitTrace& tr, std::ostream& os) {
    os << "n,re,im,modulus\n";
    for (std::size_t n = 0; n < tr.values.size(); ++n)
        os << n << ',' << tr.values[n].real() << ',' << tr.values[n].imag() << ','
           << std::abs(tr.values[n]) << '\n';
}

inline void write_sequence_csv(const std::vector<double>& seq, const char* index_name,
                               const char* value_name, std::ostream& os) {
    os << index_name << ',' << value_name << '\n';
    for (std::size_t n = 0; n < seq.size(); ++n) os << n << ',' << seq[n] << '\n';
}

struct LambdaSample {
    Complex lambda;
    double residual;
    bool pass;
};

inline void write_lambda_grid_csv(const std::vector<LambdaSample>& samples, std::ostream& os) {
    os << "re_lambda,im_lambda,residual,verdict\n";
    for (const auto& s : samples)
        os << s.lambda.real() << ',' << s.lambda.imag() << ',' << s.residual << ','
           << (s.pass ? "pass" : "fail") << '\n';
}

// ---------------------------------------------------------------------------
// reproducibility plumbing

inline std::uint64_t fnv1a_hash(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string config_hash(const Json& config) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a_hash(config.dump())));
    return std::string(buf);
}

// HARDYLAB_TOLERANCE_SCALE multiplies every default pass threshold
// (documented escape hatch for weaker floating-point environments).
inline double tolerance_scale() {
    if (const char* env = std::getenv("HARDYLAB_TOLERANCE_SCALE")) {
        const double v = std::atof(env);
        if (v > 0.0) return v;
    }
    return 1.0;
}

}  // namespace hardylab
