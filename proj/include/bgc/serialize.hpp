#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bgc/channels.hpp"
#include "bgc/coupling.hpp"
#include "bgc/decompose.hpp"
#include "bgc/degradability.hpp"
#include "bgc/gaussian_state.hpp"

/// JSON serialization.
///
/// Reading uses nlohmann::json; writing goes through a small deterministic
/// writer so reports are byte-stable: insertion-ordered keys, compact layout,
/// and floats rendered as the shortest representation that parses back to the
/// same double, capped at 15 significant digits.
namespace bgc {

/// Malformed input document (bad JSON, wrong shape, wrong types).
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal rendering of a finite double that round-trips through
/// strtod, capped at 15 significant digits. Integral values within the exact
/// range print without an exponent.
inline std::string format_double(double v) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("format_double: value must be finite");
    }
    if (v == 0.0) {
        return std::signbit(v) ? "-0" : "0";
    }
    char buf[40];
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    for (int prec = 1; prec <= 15; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) {
            return buf;
        }
    }
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

/// Streaming writer for compact JSON with caller-controlled key order.
class JsonWriter {
public:
    JsonWriter& begin_object() {
        before_value();
        out_ += '{';
        stack_.push_back(false);
        return *this;
    }
    JsonWriter& end_object() {
        stack_.pop_back();
        out_ += '}';
        return *this;
    }
    JsonWriter& begin_array() {
        before_value();
        out_ += '[';
        stack_.push_back(false);
        return *this;
    }
    JsonWriter& end_array() {
        stack_.pop_back();
        out_ += ']';
        return *this;
    }
    JsonWriter& key(std::string_view k) {
        if (!stack_.empty() && stack_.back()) {
            out_ += ',';
        }
        write_string(k);
        out_ += ':';
        after_key_ = true;
        return *this;
    }
    JsonWriter& value(double v) {
        before_value();
        out_ += format_double(v);
        return *this;
    }
    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(long long v) {
        before_value();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(bool v) {
        before_value();
        out_ += v ? "true" : "false";
        return *this;
    }
    JsonWriter& value(std::string_view v) {
        before_value();
        write_string(v);
        return *this;
    }
    JsonWriter& value(const char* v) { return value(std::string_view(v)); }

    const std::string& str() const { return out_; }

private:
    void before_value() {
        if (after_key_) {
            after_key_ = false;
        } else if (!stack_.empty()) {
            if (stack_.back()) {
                out_ += ',';
            }
        }
        if (!stack_.empty()) {
            stack_.back() = true;
        }
    }
    void write_string(std::string_view s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                case '\r': out_ += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char esc[8];
                        std::snprintf(esc, sizeof esc, "\\u%04x", c);
                        out_ += esc;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> stack_;
    bool after_key_ = false;
};

// ---------------------------------------------------------------------------
// Writing

inline void write_complex_pair(JsonWriter& w, complexd z) {
    // + 0.0 flushes IEEE -0.0 (whose production depends on compiler folding)
    // to +0.0, keeping reports byte-stable.
    w.begin_array().value(z.real() + 0.0).value(z.imag() + 0.0).end_array();
}

inline void write_state(JsonWriter& w, const GaussianState& s) {
    w.begin_object();
    w.key("n").value(s.n + 0.0);
    w.key("m");
    write_complex_pair(w, s.m);
    w.key("d");
    write_complex_pair(w, s.d);
    w.end_object();
}

inline std::string state_to_json(const GaussianState& s) {
    JsonWriter w;
    write_state(w, s);
    return w.str();
}

inline void write_coupling(JsonWriter& w, const CouplingMatrix& A) {
    w.begin_object();
    w.key("A").begin_array();
    for (int i = 0; i < 4; ++i) {
        w.begin_array();
        for (int j = 0; j < 4; ++j) {
            write_complex_pair(w, A.a(i, j));
        }
        w.end_array();
    }
    w.end_array();
    w.end_object();
}

inline std::string coupling_to_json(const CouplingMatrix& A) {
    JsonWriter w;
    write_coupling(w, A);
    return w.str();
}

inline void write_squeeze(JsonWriter& w, const SqueezeParams& s) {
    w.begin_object();
    w.key("r").value(s.r);
    w.key("phi").value(s.phi);
    w.end_object();
}

inline void write_residual_report(JsonWriter& w, const ResidualReport& r) {
    w.begin_object();
    w.key("identity").value(r.identity);
    w.key("k").value(r.k);
    w.key("k_prime").value(r.k_prime);
    w.key("max_residual").value(r.max_residual);
    w.key("samples").value(r.samples);
    w.end_object();
}

inline std::string residual_report_to_json(const ResidualReport& r) {
    JsonWriter w;
    write_residual_report(w, r);
    return w.str();
}

inline void write_decomposition(JsonWriter& w, const Decomposition& d) {
    w.begin_object();
    w.key("case").value(to_string(d.kind));
    w.key("k").value(d.k);
    w.key("sa");
    write_squeeze(w, d.sa);
    w.key("sb");
    write_squeeze(w, d.sb);
    w.key("sb_prime");
    write_squeeze(w, d.sb_prime);
    w.key("phase_a").value(d.phase_a);
    w.key("phase_b").value(d.phase_b);
    w.key("global_phase").value(d.global_phase);
    w.key("swapped").value(d.swapped);
    w.end_object();
}

inline std::string decomposition_to_json(const Decomposition& d) {
    JsonWriter w;
    write_decomposition(w, d);
    return w.str();
}

// ---------------------------------------------------------------------------
// Reading

namespace detail {

inline double number_field(const nlohmann::json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number()) {
        throw parse_error(std::string("expected numeric field \"") + field + "\"");
    }
    return j[field].get<double>();
}

inline complexd complex_pair(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw parse_error(std::string(what) + ": expected [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline GaussianState state_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw parse_error("state: expected an object with fields n, m, d");
    }
    GaussianState s;
    s.n = detail::number_field(j, "n");
    if (!j.contains("m") || !j.contains("d")) {
        throw parse_error("state: expected fields m and d");
    }
    s.m = detail::complex_pair(j["m"], "state field m");
    s.d = detail::complex_pair(j["d"], "state field d");
    return s;
}

inline CouplingMatrix coupling_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("A")) {
        throw parse_error("coupling: expected an object with field A");
    }
    const nlohmann::json& rows = j["A"];
    if (!rows.is_array() || rows.size() != 4) {
        throw parse_error("coupling: A must be a 4x4 array of [re, im] pairs");
    }
    CouplingMatrix A;
    for (int i = 0; i < 4; ++i) {
        if (!rows[i].is_array() || rows[i].size() != 4) {
            throw parse_error("coupling: A must be a 4x4 array of [re, im] pairs");
        }
        for (int j2 = 0; j2 < 4; ++j2) {
            A.a(i, j2) = detail::complex_pair(rows[i][j2], "coupling entry");
        }
    }
    return A;
}

/// A parsed channel spec. `named_k` is set when the coupling came from the
/// {"bs": k} / {"amp": k} shorthand, enabling the closed-form channel path.
struct ParsedSpec {
    CouplingMatrix coupling;
    GaussianState env = vacuum_state();
    std::optional<double> named_k;
};

/// Accepts {"coupling": <coupling|{"bs":k}|{"amp":k}>, "env": <state>} with
/// env defaulting to vacuum, or a bare coupling object in any of those forms.
inline ParsedSpec spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw parse_error("channel spec: expected an object");
    }
    ParsedSpec out;
    const nlohmann::json& c = j.contains("coupling") ? j["coupling"] : j;
    if (!c.is_object()) {
        throw parse_error("channel spec: coupling must be an object");
    }
    if (c.contains("bs")) {
        if (!c["bs"].is_number()) {
            throw parse_error("channel spec: \"bs\" must be a number");
        }
        out.named_k = c["bs"].get<double>();
        out.coupling = bs_coupling(*out.named_k);
    } else if (c.contains("amp")) {
        if (!c["amp"].is_number()) {
            throw parse_error("channel spec: \"amp\" must be a number");
        }
        out.named_k = c["amp"].get<double>();
        out.coupling = amp_coupling(*out.named_k);
    } else if (c.contains("A")) {
        out.coupling = coupling_from_json(c);
    } else {
        throw parse_error("channel spec: coupling must carry \"A\", \"bs\", or \"amp\"");
    }
    if (j.contains("env")) {
        out.env = state_from_json(j["env"]);
    }
    return out;
}

/// Parses a JSON document from text, mapping nlohmann's exception to
/// parse_error.
inline nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace bgc
