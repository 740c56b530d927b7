#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "smmc/engine.hpp"

namespace smmc {

/// Fixed result-row schema; every sweep CSV in the project carries exactly
/// this header so figures regenerate from the rows alone.
inline constexpr const char* kCsvHeader =
    "scheme,N,M,Ts_s,r_um,d_um,snr_db,ser_sim,ci95,ser_analytic,analytic_kind,symbols,replications,seed";

struct CsvRow {
    std::string scheme;
    int n = 0;
    int m = 0;
    double ts_s = 0.0;
    double r_um = 0.0;
    double d_um = 0.0;
    double snr_db = 0.0;
    double ser_sim = 0.0;
    double ci95 = 0.0;
    double ser_analytic = 0.0;  // nan when analytic_kind == "none"
    std::string analytic_kind;
    long long symbols = 0;      // per replication
    int replications = 0;
    std::uint64_t seed = 0;
};

/// One row per SNR point; doubles are printed with 17 significant digits so
/// re-parsing reproduces them exactly.
void write_curve_csv(std::ostream& out, const RunConfig& config, const SerCurve& curve);

/// Long format: the same schema with a leading `curve` label column, all
/// curves of one experiment in a single file.
void write_long_csv_header(std::ostream& out);
void write_long_csv_rows(std::ostream& out, const std::string& label, const RunConfig& config,
                         const SerCurve& curve);

/// Whitespace-separated columns for gnuplot: snr_db ser_sim ci95 ser_analytic.
void write_dat(std::ostream& out, const SerCurve& curve);

/// Strict reader for the schema above; throws std::runtime_error on any
/// header or field mismatch.
std::vector<CsvRow> read_curve_csv(std::istream& in);

}  // namespace smmc
