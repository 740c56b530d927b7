#include "smmc/csv.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace smmc {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_row(std::ostream& out, const RunConfig& cfg, const SerPoint& pt) {
    out << scheme_name(cfg.scheme.kind) << ',' << cfg.scheme.n_links << ',' << cfg.scheme.csk_order
        << ',' << fmt(cfg.symbol_duration) << ',' << fmt(cfg.geometry.separation * 1e6) << ','
        << fmt(cfg.geometry.link_distance * 1e6) << ',' << fmt(pt.snr_db) << ',' << fmt(pt.ser_sim)
        << ',' << fmt(pt.ci95) << ',' << fmt(pt.ser_analytic) << ','
        << analytic_kind_name(pt.analytic_kind) << ',' << cfg.symbols_per_rep << ','
        << cfg.replications << ',' << cfg.master_seed << '\n';
}

double to_double(const std::string& field, const char* col) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0')
        throw std::runtime_error(std::string("csv: bad ") + col + " field '" + field + "'");
    return v;
}

long long to_ll(const std::string& field, const char* col) {
    char* end = nullptr;
    const long long v = std::strtoll(field.c_str(), &end, 10);
    if (end == field.c_str() || *end != '\0')
        throw std::runtime_error(std::string("csv: bad ") + col + " field '" + field + "'");
    return v;
}

}  // namespace

void write_curve_csv(std::ostream& out, const RunConfig& config, const SerCurve& curve) {
    out << kCsvHeader << '\n';
    for (const SerPoint& pt : curve.points) write_row(out, config, pt);
}

void write_long_csv_header(std::ostream& out) { out << "curve," << kCsvHeader << '\n'; }

void write_long_csv_rows(std::ostream& out, const std::string& label, const RunConfig& config,
                         const SerCurve& curve) {
    for (const SerPoint& pt : curve.points) {
        out << label << ',';
        write_row(out, config, pt);
    }
}

void write_dat(std::ostream& out, const SerCurve& curve) {
    out << "# snr_db ser_sim ci95 ser_analytic\n";
    for (const SerPoint& pt : curve.points)
        out << fmt(pt.snr_db) << ' ' << fmt(pt.ser_sim) << ' ' << fmt(pt.ci95) << ' '
            << fmt(pt.ser_analytic) << '\n';
}

std::vector<CsvRow> read_curve_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw std::runtime_error("csv: unexpected header '" + line + "'");

    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != 14)
            throw std::runtime_error("csv: expected 14 fields, got " + std::to_string(f.size()));
        CsvRow r;
        r.scheme = f[0];
        r.n = static_cast<int>(to_ll(f[1], "N"));
        r.m = static_cast<int>(to_ll(f[2], "M"));
        r.ts_s = to_double(f[3], "Ts_s");
        r.r_um = to_double(f[4], "r_um");
        r.d_um = to_double(f[5], "d_um");
        r.snr_db = to_double(f[6], "snr_db");
        r.ser_sim = to_double(f[7], "ser_sim");
        r.ci95 = to_double(f[8], "ci95");
        r.ser_analytic = to_double(f[9], "ser_analytic");
        r.analytic_kind = f[10];
        r.symbols = to_ll(f[11], "symbols");
        r.replications = static_cast<int>(to_ll(f[12], "replications"));
        r.seed = static_cast<std::uint64_t>(to_ll(f[13], "seed"));
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace smmc
