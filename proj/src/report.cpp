#include "xxzb/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace xxzb {

std::string fmt_num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

// JSON has no nan/inf; they become strings so the document stays valid.
std::string json_num(double v) {
    if (!std::isfinite(v)) return "\"" + fmt_num(v) + "\"";
    return fmt_num(v);
}

}  // namespace

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out += '"';
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Diagnostic: return "diagnostic";
    }
    return "diagnostic";
}

CheckRecord& Report::gate(const std::string& name, int criterion, double measured, double threshold,
                          const std::string& detail) {
    CheckRecord r;
    r.name = name;
    r.criterion = criterion;
    r.measured = measured;
    r.threshold = threshold;
    r.status = measured <= threshold ? CheckStatus::Pass : CheckStatus::Fail;
    r.detail = detail;
    checks.push_back(r);
    return checks.back();
}

CheckRecord& Report::diagnostic(const std::string& name, int criterion, double measured,
                                const std::string& detail) {
    CheckRecord r;
    r.name = name;
    r.criterion = criterion;
    r.measured = measured;
    r.status = CheckStatus::Diagnostic;
    r.detail = detail;
    checks.push_back(r);
    return checks.back();
}

CheckRecord& Report::require(const std::string& name, int criterion, bool ok, double measured,
                             const std::string& detail) {
    CheckRecord r;
    r.name = name;
    r.criterion = criterion;
    r.measured = measured;
    r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    r.detail = detail;
    checks.push_back(r);
    return checks.back();
}

bool Report::passed() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) return false;
    return true;
}

bool Report::criterion_passed(int criterion) const {
    for (const auto& c : checks)
        if (c.criterion == criterion && c.status == CheckStatus::Fail) return false;
    return true;
}

bool Report::has_criterion(int criterion) const {
    for (const auto& c : checks)
        if (c.criterion == criterion && c.status != CheckStatus::Diagnostic) return true;
    return false;
}

std::string Report::to_json(bool with_runtime) const {
    std::string s = "{\n  \"suite\": " + json_escape(suite) + ",\n  \"config\": {";
    for (std::size_t i = 0; i < config.size(); ++i) {
        s += (i ? ", " : "") + json_escape(config[i].first) + ": " + config[i].second;
    }
    s += "},\n  \"checks\": [\n";
    int n_pass = 0, n_fail = 0, n_diag = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        n_pass += c.status == CheckStatus::Pass;
        n_fail += c.status == CheckStatus::Fail;
        n_diag += c.status == CheckStatus::Diagnostic;
        s += "    {\"name\": " + json_escape(c.name) + ", \"criterion\": " + std::to_string(c.criterion) +
             ", \"status\": " + json_escape(to_string(c.status)) + ", \"measured\": " + json_num(c.measured) +
             ", \"threshold\": " + (c.threshold ? json_num(*c.threshold) : std::string("null"));
        if (with_runtime && c.runtime_s) s += ", \"runtime_s\": " + json_num(*c.runtime_s);
        s += ", \"detail\": " + json_escape(c.detail) + "}";
        s += i + 1 < checks.size() ? ",\n" : "\n";
    }
    s += "  ],\n  \"files\": [";
    for (std::size_t i = 0; i < files.size(); ++i) s += (i ? ", " : "") + json_escape(files[i]);
    s += "],\n  \"summary\": {\"pass\": " + std::to_string(n_pass) + ", \"fail\": " + std::to_string(n_fail) +
         ", \"diagnostic\": " + std::to_string(n_diag) + ", \"status\": " +
         json_escape(passed() ? "pass" : "fail") + "}\n}\n";
    return s;
}

JsonObject& JsonObject::num(const std::string& key, double v) {
    fields_.emplace_back(key, json_num(v));
    return *this;
}

JsonObject& JsonObject::integer(const std::string& key, long long v) {
    fields_.emplace_back(key, std::to_string(v));
    return *this;
}

JsonObject& JsonObject::str(const std::string& key, const std::string& v) {
    fields_.emplace_back(key, json_escape(v));
    return *this;
}

JsonObject& JsonObject::raw(const std::string& key, const std::string& rendered) {
    fields_.emplace_back(key, rendered);
    return *this;
}

std::string JsonObject::render() const {
    std::string s = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i)
        s += (i ? ", " : "") + json_escape(fields_[i].first) + ": " + fields_[i].second;
    return s + "}";
}

std::string render_num_array(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + json_num(v[i]);
    return s + "]";
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace xxzb
