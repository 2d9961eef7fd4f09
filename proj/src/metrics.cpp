#include "qfl/metrics.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qfl/errors.hpp"

namespace qfl {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ModelKind parse_model_name(const std::string& name) {
    if (name == "quantum") return ModelKind::Quantum;
    if (name == "classical") return ModelKind::ClassicalMLP;
    throw ConfigError("unknown model name in CSV: '" + name + "'");
}

double parse_double(const std::string& field) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0')
        throw ConfigError("malformed numeric CSV field: '" + field + "'");
    return v;
}

} // namespace

std::string metrics_to_csv(std::span<const RoundMetrics> metrics) {
    std::ostringstream out;
    out << kMetricsCsvHeader << '\n';
    for (const RoundMetrics& m : metrics) {
        out << m.round << ',' << model_kind_name(m.model) << ',' << fmt_double(m.train_loss)
            << ',' << fmt_double(m.test_loss) << ',' << fmt_double(m.test_accuracy) << ','
            << m.elapsed_ms << '\n';
    }
    return out.str();
}

void write_metrics_csv(const std::filesystem::path& path,
                       std::span<const RoundMetrics> metrics) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << metrics_to_csv(metrics);
}

std::vector<RoundMetrics> parse_metrics_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty metrics CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kMetricsCsvHeader)
        throw ConfigError("bad metrics CSV header: '" + line + "'");

    std::vector<RoundMetrics> metrics;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 6)
            throw ConfigError("expected 6 CSV fields, got " +
                              std::to_string(fields.size()) + " in '" + line + "'");
        RoundMetrics m;
        m.round = static_cast<int>(parse_double(fields[0]));
        m.model = parse_model_name(fields[1]);
        m.train_loss = parse_double(fields[2]);
        m.test_loss = parse_double(fields[3]);
        m.test_accuracy = parse_double(fields[4]);
        m.elapsed_ms = static_cast<long long>(parse_double(fields[5]));
        metrics.push_back(m);
    }
    return metrics;
}

std::vector<RoundMetrics> read_metrics_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_metrics_csv(buf.str());
}

} // namespace qfl
