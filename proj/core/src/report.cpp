#include "qtcc/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace qtcc {
namespace fs = std::filesystem;
namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_real(const std::string& text, const std::string& context) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::runtime_error(context + ": cannot parse number '" + text + "'");
    }
    return v;
}

long long parse_integer(const std::string& text, const std::string& context) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::runtime_error(context + ": cannot parse integer '" + text + "'");
    }
    return v;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool is_echo(const ExperimentConfig& c) { return c.experiment == ExperimentKind::qrc_echo; }

std::string attempts_csv(const RunReport& r) {
    std::string out = is_echo(r.config) ? "wave_kind,mode,attempt,loss,train_loss\n"
                                        : "model,mode,attempt,test_metric,train_loss,clamp_events\n";
    for (const auto& a : r.attempts) {
        out += a.group + "," + std::string(to_string(a.mode)) + "," + std::to_string(a.attempt) + "," +
               format_real(a.metric) + "," + format_real(a.train_loss);
        if (!is_echo(r.config)) out += "," + std::to_string(a.clamp_events);
        out += "\n";
    }
    return out;
}

std::string traces_csv(const RunReport& r) {
    std::string out = "attempt,generation,best_fitness,mean_fitness,generation_best\n";
    for (const auto& t : r.traces) {
        out += std::to_string(t.attempt) + "," + std::to_string(t.record.generation) + "," +
               format_real(t.record.best_fitness) + "," + format_real(t.record.mean_fitness) + "," +
               format_real(t.record.generation_best) + "\n";
    }
    return out;
}

std::string echo_points_csv(const RunReport& r) {
    std::string out =
        "wave_kind,mode,step,target,average_prediction,minimum_prediction,maximum_prediction,"
        "average_distance,median_distance\n";
    const auto& echo = r.echo;
    for (Mode mode : {Mode::noiseless, Mode::qtcc}) {
        for (std::size_t w = 0; w < echo.waves.size(); ++w) {
            const auto& target = echo.targets[w];
            for (std::size_t k = 0; k < target.size(); ++k) {
                std::vector<double> preds;
                std::vector<double> dists;
                for (const auto& rec : echo.records) {
                    if (rec.mode != mode || rec.wave != echo.waves[w].label) continue;
                    preds.push_back(rec.prediction[k]);
                    dists.push_back(std::abs(rec.prediction[k] - target[k]));
                }
                if (preds.empty()) continue;
                double sum_p = 0.0;
                double sum_d = 0.0;
                for (double p : preds) sum_p += p;
                for (double d : dists) sum_d += d;
                const auto n = static_cast<double>(preds.size());
                out += echo.waves[w].label + "," + std::string(to_string(mode)) + "," +
                       std::to_string(static_cast<std::size_t>(echo.test_start) + k) + "," + format_real(target[k]) +
                       "," + format_real(sum_p / n) + "," + format_real(*std::min_element(preds.begin(), preds.end())) +
                       "," + format_real(*std::max_element(preds.begin(), preds.end())) + "," +
                       format_real(sum_d / n) + "," + format_real(median(dists)) + "\n";
            }
        }
    }
    return out;
}

std::string fit_points_csv(const RunReport& r) {
    std::string out = "point,average_distance,median_distance\n";
    for (int p = 0; p < r.config.n_test; ++p) {
        std::vector<double> dists;
        for (const auto& row : r.predictions) {
            if (row.point == p) dists.push_back(std::abs(row.prediction - row.target));
        }
        double sum = 0.0;
        for (double d : dists) sum += d;
        out += std::to_string(p) + "," + format_real(sum / static_cast<double>(dists.size())) + "," +
               format_real(median(dists)) + "\n";
    }
    return out;
}

std::string predictions_csv(const RunReport& r) {
    std::string out = "attempt,point,u0,u1,u2,u3,prediction,target,absolute_distance\n";
    for (const auto& row : r.predictions) {
        out += std::to_string(row.attempt) + "," + std::to_string(row.point);
        for (double u : row.u) out += "," + format_real(u);
        out += "," + format_real(row.prediction) + "," + format_real(row.target) + "," +
               format_real(std::abs(row.prediction - row.target)) + "\n";
    }
    return out;
}

std::string parameters_txt(const ParameterSnapshot& snap) {
    std::string out;
    for (std::size_t i = 0; i < snap.values.size(); ++i) out += snap.names[i] + " " + format_real(snap.values[i]) + "\n";
    return out;
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("cannot format real value");
    return std::string(buf, ptr);
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << contents;
        out.flush();
        if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, path);
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "group,mode,statistic,value\n";
    for (const auto& r : rows) {
        out += r.group + "," + std::string(to_string(r.mode)) + "," + r.statistic + "," + format_real(r.value) + "\n";
    }
    return out;
}

std::vector<fs::path> emit_report(const RunReport& report, const fs::path& directory) {
    fs::create_directories(directory);
    std::vector<fs::path> written;
    auto put = [&](const fs::path& name, const std::string& body) {
        const fs::path p = directory / name;
        write_file_atomic(p, body);
        written.push_back(p);
    };
    const bool echo = is_echo(report.config);
    put("summary.csv", summary_csv(summarize(report.attempts, echo)));
    put("attempts.csv", attempts_csv(report));
    put("traces.csv", traces_csv(report));
    put("test_points.csv", echo ? echo_points_csv(report) : fit_points_csv(report));
    if (!echo) {
        put("predictions.csv", predictions_csv(report));
        fs::create_directories(directory / "parameters");
        for (const auto& snap : report.parameters) {
            put(fs::path("parameters") / ("attempt_" + std::to_string(snap.attempt) + ".txt"), parameters_txt(snap));
        }
    }
    put("config.json", emit_config(report.config));
    put("run_info.txt", "wall_clock_seconds " + format_real(report.wall_clock_seconds) + "\n");
    return written;
}

std::vector<AttemptRecord> read_attempts(const fs::path& attempts_csv) {
    std::istringstream in(read_file(attempts_csv));
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("'" + attempts_csv.string() + "' is empty");
    const auto header = split(line);
    if (header.size() < 5) throw std::runtime_error("'" + attempts_csv.string() + "' has an unexpected header");
    std::vector<AttemptRecord> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split(line);
        const std::string ctx = attempts_csv.string() + ":" + std::to_string(line_no);
        if (cells.size() != header.size()) throw std::runtime_error(ctx + ": wrong number of columns");
        AttemptRecord r;
        r.group = cells[0];
        r.mode = parse_mode(cells[1]);
        r.attempt = static_cast<int>(parse_integer(cells[2], ctx));
        r.metric = parse_real(cells[3], ctx);
        r.train_loss = parse_real(cells[4], ctx);
        if (cells.size() > 5) r.clamp_events = static_cast<std::size_t>(parse_integer(cells[5], ctx));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<SummaryRow> reaggregate(const fs::path& directory) {
    const ExperimentConfig config = parse_config(read_file(directory / "config.json"));
    auto rows = summarize(read_attempts(directory / "attempts.csv"), is_echo(config));
    write_file_atomic(directory / "summary.csv", summary_csv(rows));
    return rows;
}

}  // namespace qtcc
