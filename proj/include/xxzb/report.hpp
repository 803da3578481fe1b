// Check records, suite reports and their JSON / CSV rendering. Numbers are printed
// with 17 significant digits in lowercase scientific notation.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace xxzb {

std::string fmt_num(double v);
std::string json_escape(const std::string& s);

enum class CheckStatus { Pass, Fail, Diagnostic };
std::string to_string(CheckStatus s);

struct CheckRecord {
    std::string name;
    int criterion = 0;  // acceptance criterion this check belongs to, 0 for none
    CheckStatus status = CheckStatus::Diagnostic;
    double measured = 0.0;
    std::optional<double> threshold;
    std::string detail;
    std::optional<double> runtime_s;
};

struct Report {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> config;  // already rendered JSON values
    std::vector<CheckRecord> checks;
    std::vector<std::string> files;  // data files written next to the report

    /// measured <= threshold -> pass, else fail (NaN fails).
    CheckRecord& gate(const std::string& name, int criterion, double measured, double threshold,
                      const std::string& detail = "");
    CheckRecord& diagnostic(const std::string& name, int criterion, double measured,
                            const std::string& detail = "");
    /// Pass/fail on a boolean with the measured value kept for the record.
    CheckRecord& require(const std::string& name, int criterion, bool ok, double measured,
                         const std::string& detail = "");

    bool passed() const;
    bool criterion_passed(int criterion) const;
    bool has_criterion(int criterion) const;
    std::string to_json(bool with_runtime) const;
};

/// Simple ordered JSON object builder for data records.
class JsonObject {
public:
    JsonObject& num(const std::string& key, double v);
    JsonObject& integer(const std::string& key, long long v);
    JsonObject& str(const std::string& key, const std::string& v);
    JsonObject& raw(const std::string& key, const std::string& rendered);
    std::string render() const;

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

std::string render_num_array(const std::vector<double>& v);

/// Writes `content` to `path`, creating parent directories. Throws on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace xxzb
