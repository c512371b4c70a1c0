#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chaostream/chaos.hpp"
#include "chaostream/errors.hpp"

namespace chaostream {

// The 13-component secret key: both systems' initial conditions and
// parameters plus the transient count t. Default values are the reference
// seed used throughout the test suite and shipped in keys/default.key
// (rho is the nearest double to 8/3).
struct SecretKey {
    double x1_0 = 13.3604;
    double x2_0 = 7.2052;
    double x3_0 = 21.5026;
    double sigma = 10.0;
    double rho = 8.0 / 3.0;
    double r = 28.0;
    double y1_0 = -10.058;
    double y2_0 = 0.368;
    double y3_0 = 37.368;
    double a = 35.0;
    double b = 3.0;
    double c = 28.0;
    std::uint64_t t = 4000;

    LorenzParams lorenz_params() const { return {sigma, r, rho}; }
    ChenParams chen_params() const { return {a, b, c}; }
    SystemState lorenz_seed() const { return {x1_0, x2_0, x3_0}; }
    SystemState chen_seed() const { return {y1_0, y2_0, y3_0}; }

    bool finite() const {
        for (double v : {x1_0, x2_0, x3_0, sigma, rho, r, y1_0, y2_0, y3_0, a,
                         b, c})
            if (!std::isfinite(v)) return false;
        return true;
    }

    friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

// Key file contents: the secret key plus the integrator step, which is
// configurable but deliberately not key material.
struct KeyFile {
    SecretKey key;
    double step = 1e-3;
};

namespace detail {

inline const std::array<std::string_view, 12>& key_field_names() {
    static const std::array<std::string_view, 12> names = {
        "x1_0", "x2_0", "x3_0", "sigma", "rho", "r",
        "y1_0", "y2_0", "y3_0", "a",     "b",   "c"};
    return names;
}

inline double* key_field(SecretKey& k, std::string_view name) {
    double* fields[12] = {&k.x1_0, &k.x2_0, &k.x3_0, &k.sigma, &k.rho, &k.r,
                          &k.y1_0, &k.y2_0, &k.y3_0, &k.a,     &k.b,   &k.c};
    const auto& names = key_field_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return fields[i];
    return nullptr;
}

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, const std::string& what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw FormatError("key file: bad numeric value for " + what);
    if (!std::isfinite(v))
        throw FormatError("key file: non-finite value for " + what);
    return v;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace detail

// Canonical key text: one `name = value` pair per line in field order,
// doubles rendered with shortest round-trip formatting.
inline std::string serialize_key(const SecretKey& k) {
    std::ostringstream out;
    const double values[12] = {k.x1_0, k.x2_0, k.x3_0, k.sigma, k.rho, k.r,
                               k.y1_0, k.y2_0, k.y3_0, k.a,     k.b,   k.c};
    const auto& names = detail::key_field_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        out << names[i] << " = " << detail::format_double(values[i]) << "\n";
    out << "t = " << k.t << "\n";
    return out.str();
}

inline std::string serialize_key_file(const KeyFile& kf) {
    return serialize_key(kf.key) + "h = " + detail::format_double(kf.step) +
           "\n";
}

// Parses key text. Lines are `name = value`; blank lines and lines starting
// with '#' are ignored. All 13 key fields are required, each exactly once;
// `h` (integrator step) is the only optional extra. Any other name is an
// error.
inline KeyFile parse_key_text(const std::string& text) {
    KeyFile kf;
    std::vector<std::string> seen;
    bool seen_t = false;
    bool seen_h = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw FormatError("key file: line " + std::to_string(lineno) +
                              " is not a name = value pair");
        const std::string name(detail::trim(line.substr(0, eq)));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (name == "t") {
            if (seen_t) throw FormatError("key file: duplicate field t");
            std::uint64_t t = 0;
            const char* first = value.data();
            const char* last = value.data() + value.size();
            auto res = std::from_chars(first, last, t);
            if (res.ec != std::errc{} || res.ptr != last)
                throw FormatError(
                    "key file: t must be a non-negative integer");
            kf.key.t = t;
            seen_t = true;
        } else if (name == "h") {
            if (seen_h) throw FormatError("key file: duplicate field h");
            kf.step = detail::parse_double(value, "h");
            if (!(kf.step > 0.0))
                throw FormatError("key file: h must be positive");
            seen_h = true;
        } else if (double* field = detail::key_field(kf.key, name)) {
            for (const auto& s : seen)
                if (s == name)
                    throw FormatError("key file: duplicate field " + name);
            *field = detail::parse_double(value, name);
            seen.push_back(name);
        } else {
            throw FormatError("key file: unknown field '" + name + "'");
        }
    }
    if (!seen_t) throw FormatError("key file: missing field t");
    if (seen.size() != detail::key_field_names().size()) {
        for (auto name : detail::key_field_names()) {
            bool found = false;
            for (const auto& s : seen) found = found || s == name;
            if (!found)
                throw FormatError("key file: missing field " +
                                  std::string(name));
        }
    }
    return kf;
}

inline KeyFile load_key_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open key file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_key_text(text);
}

inline void save_key_file(const std::string& path, const KeyFile& kf) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << serialize_key_file(kf);
    if (!out) throw IoError("write failed: " + path);
}

// Size of the key space in bits: log2(t * 10^(12 * precision_exponent)).
// Twelve real key components at 10^-precision_exponent resolution plus the
// transient count.
inline double key_space_bits(int precision_exponent, std::uint64_t t) {
    if (precision_exponent < 1)
        throw ParamError("key_space_bits: precision exponent must be >= 1");
    if (t < 1) throw ParamError("key_space_bits: t must be >= 1");
    return std::log2(static_cast<double>(t)) +
           12.0 * precision_exponent * std::log2(10.0);
}

inline std::vector<std::string> regime_warnings(const SecretKey& k) {
    std::vector<std::string> w = regime_warnings(k.lorenz_params());
    for (auto& msg : regime_warnings(k.chen_params())) w.push_back(msg);
    return w;
}

}  // namespace chaostream
