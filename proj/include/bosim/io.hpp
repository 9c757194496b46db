/**
 * Copyright 2026 bosim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BOSIM_IO_HPP
#define BOSIM_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "scaling.hpp"
#include "validation.hpp"
#include "vibronic.hpp"

namespace bosim {

using Json = nlohmann::json;

/**
@brief Serializes a double with 17 significant digits (%.17g), enough for an
exact binary round-trip; used by every CSV writer so artifacts are
bit-reproducible.
*/
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

/** @brief Reads a whole file; errors name the offending path. */
inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "read_text_file: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/** @brief Writes a whole file; errors name the offending path. */
inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), "write_text_file: cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    require(out.good(), "write_text_file: failed writing '" + path + "'");
}

/** @brief 64-bit FNV-1a hash of a byte string (used for config fingerprints). */
inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

/** @brief Lower-case fixed-width hex rendering of a 64-bit value. */
inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

namespace detail {

/** @brief Splits a complex matrix into flat row-major real/imag JSON arrays. */
inline void matrix_to_json_parts(const ComplexMatrix& m, Json& re, Json& im) {
    re = Json::array();
    im = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    }
}

/** @brief Rebuilds a square matrix from flat row-major real/imag arrays. */
inline ComplexMatrix matrix_from_json_parts(std::size_t m, const Json& re, const Json& im) {
    require(re.is_array() && im.is_array(), "matrix_from_json_parts: expected arrays");
    require(re.size() == m * m && im.size() == m * m,
            "matrix_from_json_parts: array length must be m*m");
    ComplexMatrix out(m, m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
            out(r, c) = Complex(re[r * m + c].get<double>(), im[r * m + c].get<double>());
    return out;
}

}  // namespace detail

/** @brief Interferometer as {"m","unitary_re","unitary_im","input_modes"}, row-major. */
inline Json interferometer_to_json(const Interferometer& interf) {
    Json j;
    j["m"] = interf.m();
    detail::matrix_to_json_parts(interf.unitary, j["unitary_re"], j["unitary_im"]);
    j["input_modes"] = interf.input_modes;
    return j;
}

/** @brief Parses and validates an interferometer from its JSON document. */
inline Interferometer interferometer_from_json(const Json& j) {
    require(j.is_object() && j.contains("m") && j.contains("unitary_re") &&
                j.contains("unitary_im") && j.contains("input_modes"),
            "interferometer_from_json: need keys m, unitary_re, unitary_im, input_modes");
    Interferometer interf;
    const std::size_t m = j["m"].get<std::size_t>();
    interf.unitary = detail::matrix_from_json_parts(m, j["unitary_re"], j["unitary_im"]);
    interf.input_modes = j["input_modes"].get<std::vector<std::size_t>>();
    interf.validate();
    return interf;
}

/** @brief Gaussian state as real/imag covariance arrays plus its scalar metadata. */
inline Json gaussian_state_to_json(const GaussianState& st) {
    Json j;
    j["m"] = st.m;
    detail::matrix_to_json_parts(st.sigma_q, j["sigma_q_re"], j["sigma_q_im"]);
    j["xi"] = st.xi;
    j["eta"] = st.eta;
    j["has_kernel"] = st.has_kernel;
    if (st.has_kernel)
        detail::matrix_to_json_parts(st.kernel_b, j["kernel_b_re"], j["kernel_b_im"]);
    return j;
}

/** @brief One CSV cell; pattern cells contain commas, so they are quoted. */
inline std::string csv_quote(const std::string& cell) { return "\"" + cell + "\""; }

/** @brief Occupations joined by commas: (0,1,2,0) -> "0,1,2,0". */
inline std::string pattern_to_string(const FockPattern& p) {
    std::string s;
    for (std::size_t i = 0; i < p.modes(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s;
}

/**
@brief Distribution as CSV: '#' metadata lines (domain tag, normalization),
then a header and one `pattern,probability` row per pattern, in enumeration
order. Pattern cells are quoted because occupations are comma-joined.
*/
inline std::string distribution_to_csv(const Distribution& dist) {
    std::string out;
    out += "# domain: " + dist.domain_tag + "\n";
    out += "# normalization: " + format_double(dist.normalization) + "\n";
    out += "# normalized: " + std::string(dist.normalized ? "1" : "0") + "\n";
    out += "pattern,probability\n";
    for (std::size_t i = 0; i < dist.patterns.size(); ++i)
        out += csv_quote(pattern_to_string(dist.patterns[i])) + "," +
               format_double(dist.probs[i]) + "\n";
    return out;
}

/** @brief Distribution as JSON with the domain tag and normalization constant. */
inline Json distribution_to_json(const Distribution& dist) {
    Json j;
    j["normalization_domain"] = dist.domain_tag;
    j["normalization"] = dist.normalization;
    j["normalized"] = dist.normalized;
    Json rows = Json::array();
    for (std::size_t i = 0; i < dist.patterns.size(); ++i) {
        Json row;
        row["pattern"] = dist.patterns[i].occupations();
        row["probability"] = dist.probs[i];
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

/** @brief Protocol tags used in sample files. */
inline std::string protocol_name(SampleRecord::Protocol p) {
    switch (p) {
        case SampleRecord::Protocol::Standard: return "standard";
        case SampleRecord::Protocol::Sbs: return "sbs";
        case SampleRecord::Protocol::Gbs: return "gbs";
    }
    return "standard";
}

/** @brief Inverse of protocol_name; rejects unknown tags. */
inline SampleRecord::Protocol protocol_from_name(const std::string& name) {
    if (name == "standard") return SampleRecord::Protocol::Standard;
    if (name == "sbs") return SampleRecord::Protocol::Sbs;
    if (name == "gbs") return SampleRecord::Protocol::Gbs;
    throw Error("protocol_from_name: unknown protocol '" + name + "'");
}

/**
@brief Samples as JSON-lines, one record per line:
{"protocol": ..., "herald": [...], "output": [...], "index": n}. Streamable:
each line parses on its own.
*/
inline std::string sample_records_to_jsonl(const std::vector<SampleRecord>& samples) {
    std::string out;
    for (const SampleRecord& s : samples) {
        Json j;
        j["protocol"] = protocol_name(s.protocol);
        j["herald"] = s.herald.occupations();
        j["output"] = s.output.occupations();
        j["index"] = s.index;
        out += j.dump() + "\n";
    }
    return out;
}

/** @brief Parses JSON-lines samples; a missing index falls back to the line number. */
inline std::vector<SampleRecord> sample_records_from_jsonl(const std::string& text) {
    std::vector<SampleRecord> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json j = Json::parse(line);
        require(j.is_object() && j.contains("protocol") && j.contains("output"),
                "sample_records_from_jsonl: each line needs protocol and output");
        SampleRecord s;
        s.protocol = protocol_from_name(j["protocol"].get<std::string>());
        if (j.contains("herald")) s.herald = FockPattern(j["herald"].get<std::vector<int>>());
        s.output = FockPattern(j["output"].get<std::vector<int>>());
        s.index = j.contains("index") ? j["index"].get<std::size_t>() : lineno;
        s.validate();
        out.push_back(std::move(s));
        ++lineno;
    }
    return out;
}

/**
@brief Verdict trace as CSV: '#' metadata (final decision, confidence, bounds),
header `index,value`, then the per-sample confidence trace (Bayesian tests) or
counter trace (counter tests) — whichever the verdict carries.
*/
inline std::string verdict_to_csv(const ValidationVerdict& v) {
    std::string out;
    out += "# decision: " + std::string(ValidationVerdict::decision_name(v.final_decision)) + "\n";
    out += "# final_confidence: " + format_double(v.final_confidence) + "\n";
    out += "# multi_lower_bound: " + format_double(v.multi_lower_bound) + "\n";
    out += "# multi_upper_bound: " + format_double(v.multi_upper_bound) + "\n";
    out += "index,value\n";
    if (!v.confidence_trace.empty()) {
        for (std::size_t i = 0; i < v.confidence_trace.size(); ++i)
            out += std::to_string(i) + "," + format_double(v.confidence_trace[i]) + "\n";
    } else {
        for (std::size_t i = 0; i < v.counter_trace.size(); ++i)
            out += std::to_string(i) + "," + std::to_string(v.counter_trace[i]) + "\n";
    }
    return out;
}

/** @brief Molecule as {"omega","omega_prime","duschinsky","displacement"}; rows nested. */
inline Json molecule_to_json(const MoleculeSpec& mol) {
    Json j;
    j["omega"] = mol.omega;
    j["omega_prime"] = mol.omega_prime;
    Json rows = Json::array();
    for (std::size_t r = 0; r < mol.duschinsky.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < mol.duschinsky.cols(); ++c)
            row.push_back(mol.duschinsky(r, c).real());
        rows.push_back(row);
    }
    j["duschinsky"] = rows;
    j["displacement"] = mol.displacement;
    return j;
}

/** @brief Parses and validates a molecule; a missing displacement means zero. */
inline MoleculeSpec molecule_from_json(const Json& j) {
    require(j.is_object() && j.contains("omega") && j.contains("omega_prime") &&
                j.contains("duschinsky"),
            "molecule_from_json: need keys omega, omega_prime, duschinsky");
    MoleculeSpec mol;
    mol.omega = j["omega"].get<std::vector<double>>();
    mol.omega_prime = j["omega_prime"].get<std::vector<double>>();
    const std::size_t m = mol.omega.size();
    const Json& rows = j["duschinsky"];
    require(rows.is_array() && rows.size() == m, "molecule_from_json: duschinsky needs m rows");
    mol.duschinsky = ComplexMatrix(m, m);
    for (std::size_t r = 0; r < m; ++r) {
        require(rows[r].is_array() && rows[r].size() == m,
                "molecule_from_json: duschinsky rows need m entries");
        for (std::size_t c = 0; c < m; ++c)
            mol.duschinsky(r, c) = rows[r][c].get<double>();
    }
    mol.displacement = j.contains("displacement") ? j["displacement"].get<std::vector<double>>()
                                                  : std::vector<double>(m, 0.0);
    mol.validate();
    return mol;
}

/** @brief Vibronic profile as CSV `omega,mass` rows in ascending energy order. */
inline std::string profile_to_csv(const FcProfile& profile) {
    std::string out;
    out += "# truncation_n: " + std::to_string(profile.truncation_n) + "\n";
    out += "omega,mass\n";
    for (std::size_t i = 0; i < profile.frequencies.size(); ++i)
        out += format_double(profile.frequencies[i]) + "," + format_double(profile.masses[i]) +
               "\n";
    return out;
}

/** @brief Loss-study table as CSV `xi,eta,mean_fidelity` in grid order. */
inline std::string loss_study_to_csv(const std::vector<LossFidelityRow>& rows) {
    std::string out = "xi,eta,mean_fidelity\n";
    for (const LossFidelityRow& r : rows)
        out += format_double(r.xi) + "," + format_double(r.eta) + "," +
               format_double(r.mean_fidelity) + "\n";
    return out;
}

/** @brief Rate table as CSV `n,rate_hz` rows. */
inline std::string rate_table_to_csv(const std::vector<std::pair<int, double>>& rows) {
    std::string out = "n,rate_hz\n";
    for (const auto& r : rows)
        out += std::to_string(r.first) + "," + format_double(r.second) + "\n";
    return out;
}

/**
@brief Run manifest: what was run (command + full config), how to fingerprint
it (FNV-1a of the canonically dumped config), with what code (version), seed,
wall time, and which artifact files were written. Everything except
wall_time_ms is a pure function of (config, seed, code version); re-running
from the embedded config reproduces the artifacts bit for bit.
*/
struct RunManifest {
    std::string command;
    Json config;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string version;
    double wall_time_ms = 0.0;
    std::vector<std::string> artifacts;
};

/** @brief Canonical config fingerprint: FNV-1a of the sorted-key JSON dump. */
inline std::string config_hash(const Json& config) { return hex64(fnv1a64(config.dump())); }

/** @brief Manifest to JSON (keys sorted by the serializer — deterministic). */
inline Json manifest_to_json(const RunManifest& man) {
    Json j;
    j["manifest_schema_version"] = 1;
    j["command"] = man.command;
    j["config"] = man.config;
    j["config_hash"] = man.config_hash;
    j["seed"] = man.seed;
    j["version"] = man.version;
    j["wall_time_ms"] = man.wall_time_ms;
    j["artifacts"] = man.artifacts;
    return j;
}

/** @brief Parses a manifest document (for reproducing a recorded run). */
inline RunManifest manifest_from_json(const Json& j) {
    require(j.is_object() && j.contains("manifest_schema_version") && j.contains("command") &&
                j.contains("config"),
            "manifest_from_json: need keys manifest_schema_version, command, config");
    require(j["manifest_schema_version"].get<int>() == 1,
            "manifest_from_json: unsupported manifest schema version");
    RunManifest man;
    man.command = j["command"].get<std::string>();
    man.config = j["config"];
    man.config_hash = j.value("config_hash", std::string());
    man.seed = j.value("seed", static_cast<std::uint64_t>(0));
    man.version = j.value("version", std::string());
    man.wall_time_ms = j.value("wall_time_ms", 0.0);
    if (j.contains("artifacts")) man.artifacts = j["artifacts"].get<std::vector<std::string>>();
    return man;
}

}  // namespace bosim

#endif  // BOSIM_IO_HPP
