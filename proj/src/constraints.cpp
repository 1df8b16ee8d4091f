#include "yuklat/constraints.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <system_error>

#include "yuklat/force.hpp"

namespace yuklat {

namespace {

std::string shortest_decimal(double v) {
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, ptr);
}

// Strict: the whole token (minus surrounding blanks) must be one number.
std::optional<double> parse_double(const std::string& token) {
    const auto begin = token.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return std::nullopt;
    const auto end = token.find_last_not_of(" \t\r") + 1;
    double value = 0.0;
    const char* first = token.data() + begin;
    const char* last = token.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

}  // namespace

void require_valid_line(const ConstraintLine& line) {
    if (line.points.size() < 2) {
        throw std::invalid_argument("constraint line '" + line.label +
                                    "' needs at least 2 points");
    }
    double previous = 0.0;
    for (std::size_t i = 0; i < line.points.size(); ++i) {
        const auto& p = line.points[i];
        if (!(p.lambda_m > 0.0) || !std::isfinite(p.lambda_m)) {
            throw std::invalid_argument("constraint line '" + line.label +
                                        "': non-positive lambda at point " +
                                        std::to_string(i));
        }
        if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
            throw std::invalid_argument("constraint line '" + line.label +
                                        "': non-positive alpha at point " +
                                        std::to_string(i));
        }
        if (i > 0 && !(p.lambda_m > previous)) {
            throw std::invalid_argument("constraint line '" + line.label +
                                        "': lambda not strictly increasing at point " +
                                        std::to_string(i));
        }
        previous = p.lambda_m;
    }
}

std::optional<double> alpha_min(const ExperimentConfig& config,
                                const MeasurementPoint& point, double lambda_m,
                                const PhysicalConstants& k) {
    if (!(lambda_m > 0.0)) {
        throw std::domain_error("alpha_min: interaction range must be positive");
    }
    const auto violations = validate(config, point);
    if (!violations.empty()) {
        throw std::invalid_argument("alpha_min: invalid inputs: " + violations.front());
    }

    const YukawaParams unit_strength{1.0, lambda_m};
    const double signal =
        std::abs(max_lateral_force(config, point.separation_m, unit_strength, k).force_n);
    if (signal == 0.0) {
        return std::nullopt;  // degenerate geometry: nothing is excluded
    }
    return point.force_error_n / signal;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi >= lo) || n < 1) {
        throw std::invalid_argument("log_grid: need 0 < lo <= hi and n >= 1");
    }
    if (n == 1) return {lo};
    if (hi == lo) {
        throw std::invalid_argument("log_grid: lo == hi needs n == 1");
    }
    std::vector<double> grid(n);
    const double step = (std::log(hi) - std::log(lo)) / (n - 1);
    for (int i = 0; i < n; ++i) grid[i] = std::exp(std::log(lo) + step * i);
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

ConstraintLine exclusion_curve(const ExperimentConfig& config,
                               const std::vector<MeasurementPoint>& points,
                               const std::vector<double>& lambda_grid,
                               const PhysicalConstants& k) {
    if (points.empty()) {
        throw std::invalid_argument("exclusion_curve: need at least one measurement point");
    }
    if (lambda_grid.empty()) {
        throw std::invalid_argument("exclusion_curve: empty lambda grid");
    }

    ConstraintLine line;
    line.label = "computed";
    line.provenance = Provenance::computed;
    line.points.reserve(lambda_grid.size());

    for (double lambda : lambda_grid) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& point : points) {
            const auto bound = alpha_min(config, point, lambda, k);
            if (bound) best = std::min(best, *bound);
        }
        if (!std::isfinite(best)) {
            throw std::domain_error(
                "exclusion_curve: geometry produces no signal, nothing is excluded");
        }
        line.points.push_back(ConstraintPoint{lambda, best});
    }

    if (line.points.size() >= 2) require_valid_line(line);
    return line;
}

double interpolate_alpha(const ConstraintLine& line, double lambda_m) {
    require_valid_line(line);
    const auto& pts = line.points;
    if (lambda_m < pts.front().lambda_m || lambda_m > pts.back().lambda_m) {
        throw std::domain_error("interpolate_alpha: lambda outside the line span");
    }

    auto upper = std::lower_bound(
        pts.begin(), pts.end(), lambda_m,
        [](const ConstraintPoint& p, double value) { return p.lambda_m < value; });
    if (upper->lambda_m == lambda_m) return upper->alpha;  // exact at knots

    const auto lower = upper - 1;
    const double t = (std::log(lambda_m) - std::log(lower->lambda_m)) /
                     (std::log(upper->lambda_m) - std::log(lower->lambda_m));
    return std::exp(std::log(lower->alpha) +
                    t * (std::log(upper->alpha) - std::log(lower->alpha)));
}

StrengtheningReport compare(const ConstraintLine& candidate,
                            const std::vector<ConstraintLine>& references,
                            const std::vector<double>& lambda_grid) {
    require_valid_line(candidate);
    if (references.empty()) {
        throw std::invalid_argument("compare: need at least one reference line");
    }
    for (const auto& ref : references) require_valid_line(ref);

    double span_lo = candidate.lambda_min_m();
    double span_hi = candidate.lambda_max_m();
    for (const auto& ref : references) {
        span_lo = std::max(span_lo, ref.lambda_min_m());
        span_hi = std::min(span_hi, ref.lambda_max_m());
    }
    if (!(span_lo <= span_hi)) {
        throw DataCompatibilityError("compare: line spans do not overlap");
    }

    StrengtheningReport report;
    for (double lambda : lambda_grid) {
        if (lambda < span_lo || lambda > span_hi) continue;
        const double candidate_alpha = interpolate_alpha(candidate, lambda);
        double weakest = std::numeric_limits<double>::infinity();
        for (const auto& ref : references) {
            weakest = std::min(weakest, interpolate_alpha(ref, lambda));
        }
        report.lambda_grid_m.push_back(lambda);
        report.ratio.push_back(weakest / candidate_alpha);
    }
    if (report.lambda_grid_m.empty()) {
        throw DataCompatibilityError(
            "compare: no grid points inside the common span [" +
            shortest_decimal(span_lo) + ", " + shortest_decimal(span_hi) + "] m");
    }

    // argmax of the ratio
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < report.ratio.size(); ++i) {
        if (report.ratio[i] > report.ratio[argmax]) argmax = i;
    }
    report.max_ratio = report.ratio[argmax];
    report.argmax_lambda_m = report.lambda_grid_m[argmax];

    // widest contiguous run with ratio strictly above 1
    std::size_t best_begin = 0, best_len = 0, run_begin = 0, run_len = 0;
    for (std::size_t i = 0; i <= report.ratio.size(); ++i) {
        if (i < report.ratio.size() && report.ratio[i] > 1.0) {
            if (run_len == 0) run_begin = i;
            ++run_len;
        } else {
            if (run_len > best_len) {
                best_len = run_len;
                best_begin = run_begin;
            }
            run_len = 0;
        }
    }
    if (best_len > 0) {
        report.has_window = true;
        report.window_lo_m = report.lambda_grid_m[best_begin];
        report.window_hi_m = report.lambda_grid_m[best_begin + best_len - 1];
    }
    return report;
}

ConstraintLine load_line(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open constraint line file: " + path.string());
    }

    ConstraintLine line;
    line.label = path.stem().string();
    line.provenance = Provenance::ingested;

    std::string row;
    int row_number = 0;
    bool header_seen = false;
    while (std::getline(in, row)) {
        ++row_number;
        const auto first = row.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (row[first] == '#') {
            const std::string label_tag = "# label:";
            if (row.compare(first, label_tag.size(), label_tag) == 0) {
                auto value = row.substr(first + label_tag.size());
                const auto begin = value.find_first_not_of(" \t");
                if (begin != std::string::npos) {
                    line.label = value.substr(begin);
                    const auto end = line.label.find_last_not_of(" \t\r");
                    line.label.resize(end + 1);
                }
            }
            continue;
        }
        if (!header_seen) {
            std::string header = row.substr(first);
            header.erase(std::remove_if(header.begin(), header.end(),
                                        [](char c) { return c == ' ' || c == '\r'; }),
                         header.end());
            if (header != "lambda_m,alpha") {
                throw std::runtime_error(path.string() + ":" + std::to_string(row_number) +
                                         ": expected header 'lambda_m,alpha'");
            }
            header_seen = true;
            continue;
        }

        std::istringstream fields(row);
        std::string lambda_text, alpha_text, extra;
        if (!std::getline(fields, lambda_text, ',') || !std::getline(fields, alpha_text, ',')) {
            throw std::runtime_error(path.string() + ":" + std::to_string(row_number) +
                                     ": malformed row, expected 'lambda,alpha'");
        }
        if (std::getline(fields, extra, ',')) {
            throw std::runtime_error(path.string() + ":" + std::to_string(row_number) +
                                     ": trailing fields after 'lambda,alpha'");
        }
        const auto lambda = parse_double(lambda_text);
        const auto alpha = parse_double(alpha_text);
        if (!lambda || !alpha) {
            throw std::runtime_error(path.string() + ":" + std::to_string(row_number) +
                                     ": cannot parse numbers from '" + row + "'");
        }
        line.points.push_back(ConstraintPoint{*lambda, *alpha});
    }

    try {
        require_valid_line(line);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    return line;
}

void save_line(const ConstraintLine& line, const std::filesystem::path& path) {
    const std::filesystem::path temp = path.string() + ".tmp";
    try {
        {
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            if (!out) {
                throw std::runtime_error("cannot write constraint line file: " +
                                         temp.string());
            }
            out << "# label: " << line.label << "\n";
            out << "lambda_m,alpha\n";
            for (const auto& p : line.points) {
                out << shortest_decimal(p.lambda_m) << "," << shortest_decimal(p.alpha)
                    << "\n";
            }
            if (!out) {
                throw std::runtime_error("write failed: " + temp.string());
            }
        }
        std::filesystem::rename(temp, path);
    } catch (...) {
        std::error_code ignored;
        std::filesystem::remove(temp, ignored);
        throw;
    }
}

}  // namespace yuklat
