#pragma once

// Self-describing result records and their csv / json-lines serialization.
// Numeric fields are written with 17 significant digits through
// std::to_chars, so output bytes are locale-independent and reruns of the
// same configuration serialize identically.  Wall-clock durations are kept
// out of the emitted files unless explicitly requested, so files stay
// byte-comparable across runs.

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zetalab/core.hpp"

namespace zetalab {

struct ResultRecord {
    std::string id;
    std::vector<std::pair<std::string, std::string>> inputs; // echoed configuration
    std::vector<std::pair<std::string, double>> outputs;
    std::vector<std::pair<std::string, double>> diagnostics;
    double duration_seconds = 0.0;

    void add_input(const std::string& k, const std::string& v) { inputs.emplace_back(k, v); }
    void add_input(const std::string& k, double v);
    void add_output(const std::string& k, double v) { outputs.emplace_back(k, v); }
    void add_diag(const std::string& k, double v) { diagnostics.emplace_back(k, v); }
};

enum class OutputFormat { csv, json_lines };

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline void ResultRecord::add_input(const std::string& k, double v) {
    inputs.emplace_back(k, format_double(v));
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"'; // double embedded quotes
        q += c;
    }
    q += "\"";
    return q;
}

inline std::string json_quote(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') q += '\\';
        q += c;
    }
    q += "\"";
    return q;
}

} // namespace detail

inline void emit_results(const std::vector<ResultRecord>& records, OutputFormat fmt,
                         std::ostream& out, bool with_timing = false) {
    if (fmt == OutputFormat::csv) {
        // header = union of keys in first-appearance order
        std::vector<std::string> cols{"id"};
        auto ensure = [&](const std::string& k) {
            for (const auto& c : cols)
                if (c == k) return;
            cols.push_back(k);
        };
        for (const auto& r : records) {
            for (const auto& [k, v] : r.inputs) ensure("in." + k);
            for (const auto& [k, v] : r.outputs) ensure("out." + k);
            for (const auto& [k, v] : r.diagnostics) ensure("diag." + k);
        }
        if (with_timing) ensure("duration_seconds");

        for (std::size_t i = 0; i < cols.size(); ++i)
            out << (i ? "," : "") << detail::csv_quote(cols[i]);
        out << "\n";

        for (const auto& r : records) {
            for (std::size_t i = 0; i < cols.size(); ++i) {
                if (i) out << ",";
                const std::string& c = cols[i];
                if (c == "id") {
                    out << detail::csv_quote(r.id);
                } else if (c == "duration_seconds") {
                    out << format_double(r.duration_seconds);
                } else if (c.rfind("in.", 0) == 0) {
                    for (const auto& [k, v] : r.inputs)
                        if ("in." + k == c) {
                            out << detail::csv_quote(v);
                            break;
                        }
                } else if (c.rfind("out.", 0) == 0) {
                    for (const auto& [k, v] : r.outputs)
                        if ("out." + k == c) {
                            out << format_double(v);
                            break;
                        }
                } else {
                    for (const auto& [k, v] : r.diagnostics)
                        if ("diag." + k == c) {
                            out << format_double(v);
                            break;
                        }
                }
            }
            out << "\n";
        }
        return;
    }

    // json-lines, keys in insertion order
    for (const auto& r : records) {
        out << "{\"id\":" << detail::json_quote(r.id) << ",\"inputs\":{";
        for (std::size_t i = 0; i < r.inputs.size(); ++i)
            out << (i ? "," : "") << detail::json_quote(r.inputs[i].first) << ":"
                << detail::json_quote(r.inputs[i].second);
        out << "},\"outputs\":{";
        for (std::size_t i = 0; i < r.outputs.size(); ++i)
            out << (i ? "," : "") << detail::json_quote(r.outputs[i].first) << ":"
                << format_double(r.outputs[i].second);
        out << "},\"diagnostics\":{";
        for (std::size_t i = 0; i < r.diagnostics.size(); ++i)
            out << (i ? "," : "") << detail::json_quote(r.diagnostics[i].first) << ":"
                << format_double(r.diagnostics[i].second);
        out << "}";
        if (with_timing) out << ",\"duration_seconds\":" << format_double(r.duration_seconds);
        out << "}\n";
    }
}

inline void emit_results(const std::vector<ResultRecord>& records, OutputFormat fmt,
                         const std::string& path, bool with_timing = false) {
    if (path == "-") {
        emit_results(records, fmt, std::cout, with_timing);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("emit_results: cannot open '" + path + "' for writing");
    emit_results(records, fmt, out, with_timing);
    if (!out) throw error("emit_results: write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Parse-back used by round-trip tests and downstream consumers.

namespace detail {

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

inline double parse_double_strict(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{}) throw parse_error("parse_results: bad number '" + s + "'");
    return v;
}

} // namespace detail

inline std::vector<ResultRecord> parse_results_csv(std::istream& in) {
    std::vector<ResultRecord> records;
    std::string line;
    if (!std::getline(in, line)) return records;
    auto cols = detail::csv_split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = detail::csv_split(line);
        ResultRecord r;
        for (std::size_t i = 0; i < cols.size() && i < cells.size(); ++i) {
            const std::string& c = cols[i];
            if (c == "id")
                r.id = cells[i];
            else if (c == "duration_seconds")
                r.duration_seconds = cells[i].empty() ? 0.0 : detail::parse_double_strict(cells[i]);
            else if (c.rfind("in.", 0) == 0)
                r.inputs.emplace_back(c.substr(3), cells[i]);
            else if (c.rfind("out.", 0) == 0 && !cells[i].empty())
                r.outputs.emplace_back(c.substr(4), detail::parse_double_strict(cells[i]));
            else if (c.rfind("diag.", 0) == 0 && !cells[i].empty())
                r.diagnostics.emplace_back(c.substr(5), detail::parse_double_strict(cells[i]));
        }
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace zetalab
