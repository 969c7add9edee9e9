#pragma once

// Published reference values (three solvers for problem 1, three BDF
// variants for problem 2) shipped as data/baselines.json. The file is
// pinned by SHA-256; loading it with verification on rejects any edit.
//
// Requires linking OpenSSL::Crypto.

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "symmpinn/report/csv.hpp"
#include "symmpinn/report/error_table.hpp"

namespace symmpinn::report {

inline constexpr const char* baselines_sha256 = "ef903dbfd05f1b52ec188f783190be4cc388a3f161c4d80f6be9f2d8ac8cf27b";

inline std::string default_baselines_path() {
#ifdef SYMMPINN_DATA_DIR
    return std::string(SYMMPINN_DATA_DIR) + "/baselines.json";
#else
    return "data/baselines.json";
#endif
}

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw error("sha256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

/// A number as printed: its text and the value it denotes.
struct Printed {
    std::string text;
    double value = 0.0;

    /// Half a unit in the last printed digit.
    double half_ulp() const {
        const auto e = text.find_first_of("eE");
        const std::string mant = text.substr(0, e);
        const auto dot = mant.find('.');
        const int decimals = dot == std::string::npos ? 0 : static_cast<int>(mant.size() - dot - 1);
        const int exp10 = e == std::string::npos ? 0 : std::stoi(text.substr(e + 1));
        return 0.5 * std::pow(10.0, exp10 - decimals);
    }
    /// True when `v` rounds to this printed value.
    bool matches(double v) const { return std::abs(v - value) <= half_ulp() * (1.0 + 1e-9); }
};

inline Printed printed(const std::string& s) { return {s, std::stod(s)}; }

struct BaselinePoint {
    double x = 0.0, t = 0.0;
    Printed exact;
    std::map<std::string, Printed> values;
    std::map<std::string, Printed> errors; // as published; empty when only values were printed
};

struct BaselineConstants {
    std::vector<std::string> problem1_methods;
    std::vector<BaselinePoint> problem1;
    std::vector<std::string> problem2_methods;
    std::vector<BaselinePoint> problem2_time;  // x in {0.25, 0.5, 0.75}, t in {2.4, 2.6, 3}
    std::vector<BaselinePoint> problem2_space; // x = 0.1..0.9, t = 2.5
    std::string sha256;

    const std::vector<std::string>& methods(ProblemTag tag) const {
        return tag == ProblemTag::p1 ? problem1_methods : problem2_methods;
    }
    std::vector<BaselinePoint> points(ProblemTag tag) const {
        if (tag == ProblemTag::p1) return problem1;
        auto all = problem2_time;
        all.insert(all.end(), problem2_space.begin(), problem2_space.end());
        return all;
    }
};

namespace detail {

inline BaselinePoint parse_point(const nlohmann::json& j) {
    BaselinePoint p;
    p.x = std::stod(j.at("x").get<std::string>());
    p.t = std::stod(j.at("t").get<std::string>());
    p.exact = printed(j.at("exact").get<std::string>());
    for (const auto& [k, v] : j.at("values").items()) p.values[k] = printed(v.get<std::string>());
    if (j.contains("errors"))
        for (const auto& [k, v] : j.at("errors").items()) p.errors[k] = printed(v.get<std::string>());
    return p;
}

} // namespace detail

inline BaselineConstants parse_baselines(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "symmpinn.baselines") throw error("not a baseline asset");
    BaselineConstants b;
    b.sha256 = sha256_hex(text);
    b.problem1_methods = j.at("problem1").at("methods").get<std::vector<std::string>>();
    for (const auto& p : j.at("problem1").at("points")) b.problem1.push_back(detail::parse_point(p));
    b.problem2_methods = j.at("problem2").at("methods").get<std::vector<std::string>>();
    for (const auto& p : j.at("problem2").at("time_table")) b.problem2_time.push_back(detail::parse_point(p));
    for (const auto& p : j.at("problem2").at("space_table")) b.problem2_space.push_back(detail::parse_point(p));
    return b;
}

/// Reads the asset; with `verify` the file must hash to baselines_sha256.
inline BaselineConstants load_baselines(const std::string& path = default_baselines_path(), bool verify = true) {
    const auto text = read_text(path);
    if (verify) {
        const auto h = sha256_hex(text);
        if (h != baselines_sha256) throw error("baseline asset checksum mismatch (" + h + ")");
    }
    return parse_baselines(text);
}

// ---- comparison ----------------------------------------------------------

struct BaselineCell {
    std::optional<double> error; // nullopt: no published value at this point
    bool derived = false;        // |value - exact| from printed values, no printed error
    bool precision_floor = false; // printed error is zero at printed precision
};

struct ComparisonRow {
    double x = 0.0, t = 0.0;
    double model_error = 0.0;
    bool exact_matches_printed = true;
    std::optional<Printed> printed_exact;
    std::map<std::string, BaselineCell> baselines;
};

struct ComparisonReport {
    ProblemTag problem = ProblemTag::p1;
    std::vector<std::string> methods;
    std::vector<ComparisonRow> rows;
    std::map<std::string, std::size_t> wins;     // model strictly below the baseline
    std::map<std::string, std::size_t> compared; // points with a baseline value
    std::size_t gaps = 0;                        // rows without any baseline point

    std::string to_text() const;
    CsvTable to_csv() const;
};

/// Lines up an ErrorTable with the published baseline errors. Points are
/// matched on (x, t); rows without a baseline point are kept with empty
/// cells. For problem 2 no errors were published, so the baseline errors
/// are |value - exact| from the printed numbers.
inline ComparisonReport compare_with_baselines(const ErrorTable& table, const BaselineConstants& b) {
    ComparisonReport rep;
    rep.problem = table.problem;
    rep.methods = b.methods(table.problem);
    for (const auto& m : rep.methods) {
        rep.wins[m] = 0;
        rep.compared[m] = 0;
    }
    const auto points = b.points(table.problem);
    for (const auto& r : table.rows) {
        ComparisonRow row;
        row.x = r.x;
        row.t = r.t;
        row.model_error = r.abs_error;
        const BaselinePoint* bp = nullptr;
        for (const auto& p : points)
            if (std::abs(p.x - r.x) < 1e-9 && std::abs(p.t - r.t) < 1e-9) bp = &p;
        if (!bp) {
            ++rep.gaps;
            for (const auto& m : rep.methods) row.baselines[m] = {};
            rep.rows.push_back(std::move(row));
            continue;
        }
        row.printed_exact = bp->exact;
        row.exact_matches_printed = bp->exact.matches(r.exact);
        for (const auto& m : rep.methods) {
            BaselineCell cell;
            if (auto e = bp->errors.find(m); e != bp->errors.end()) {
                cell.error = e->second.value;
                cell.precision_floor = e->second.value == 0.0;
            } else if (auto v = bp->values.find(m); v != bp->values.end()) {
                cell.error = std::abs(v->second.value - bp->exact.value);
                cell.derived = true;
                cell.precision_floor = *cell.error == 0.0;
            }
            if (cell.error) {
                ++rep.compared[m];
                if (r.abs_error < *cell.error) ++rep.wins[m];
            }
            row.baselines[m] = cell;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

inline std::string ComparisonReport::to_text() const {
    std::string out;
    char buf[64];
    out += "x      t      model";
    for (const auto& m : methods) out += "  " + m;
    out += "\n";
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-6.3g %-6.3g %.6f", r.x, r.t, r.model_error);
        out += buf;
        for (const auto& m : methods) {
            const auto& c = r.baselines.at(m);
            if (!c.error) {
                out += "  n/a";
                continue;
            }
            std::snprintf(buf, sizeof buf, "  %.6f", *c.error);
            out += buf;
            if (c.precision_floor) out += "(floor)";
            if (c.derived) out += "*";
        }
        if (!r.exact_matches_printed) out += "  [exact differs from printed " + r.printed_exact->text + "]";
        out += "\n";
    }
    for (const auto& m : methods)
        out += "model beats " + m + " at " + std::to_string(wins.at(m)) + " of " + std::to_string(compared.at(m)) +
               " points\n";
    if (gaps) out += std::to_string(gaps) + " point(s) without baseline values\n";
    return out;
}

inline CsvTable ComparisonReport::to_csv() const {
    CsvTable t;
    t.meta = {{"problem", to_string(problem)}};
    t.columns = {"x", "t", "model_error"};
    for (const auto& m : methods) {
        t.columns.push_back(m + "_error");
        t.columns.push_back(m + "_floor");
    }
    for (const auto& r : rows) {
        std::vector<double> row{r.x, r.t, r.model_error};
        for (const auto& m : methods) {
            const auto& c = r.baselines.at(m);
            row.push_back(c.error ? *c.error : std::nan(""));
            row.push_back(c.precision_floor ? 1.0 : 0.0);
        }
        t.rows.push_back(std::move(row));
    }
    for (const auto& m : methods) t.meta.emplace_back("wins_" + m, std::to_string(wins.at(m)) + "/" + std::to_string(compared.at(m)));
    return t;
}

} // namespace symmpinn::report
