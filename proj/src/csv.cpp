#include "helns/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "helns/errors.hpp"

namespace helns {

std::string format_double_17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::array<double, 22> numeric_fields(const DiagnosticsRecord& r) {
    return {r.t,           r.energy,       r.grad_sq,      r.Y,
            r.A32_sq,      r.cond_i,       r.cond_ii,      r.cond_iii,
            r.cond_iv,     r.a,            r.a_plus_cubed, r.a_minus_fifth,
            r.cross_term,  r.cancel_resid, r.ineq_3_2_lhs, r.ineq_3_2_rhs,
            r.ineq_3_3_lhs, r.ineq_3_3_rhs, r.ineq_3_5_slack, r.ineq_3_10_lhs,
            r.ineq_3_10_rhs, r.envelope};
}

void assign_numeric(DiagnosticsRecord& r, const std::array<double, 22>& f) {
    r.t = f[0];
    r.energy = f[1];
    r.grad_sq = f[2];
    r.Y = f[3];
    r.A32_sq = f[4];
    r.cond_i = f[5];
    r.cond_ii = f[6];
    r.cond_iii = f[7];
    r.cond_iv = f[8];
    r.a = f[9];
    r.a_plus_cubed = f[10];
    r.a_minus_fifth = f[11];
    r.cross_term = f[12];
    r.cancel_resid = f[13];
    r.ineq_3_2_lhs = f[14];
    r.ineq_3_2_rhs = f[15];
    r.ineq_3_3_lhs = f[16];
    r.ineq_3_3_rhs = f[17];
    r.ineq_3_5_slack = f[18];
    r.ineq_3_10_lhs = f[19];
    r.ineq_3_10_rhs = f[20];
    r.envelope = f[21];
}

}  // namespace

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records) {
    for (std::size_t i = 0; i < diagnostics_csv_columns.size(); ++i) {
        if (i) out << ',';
        out << diagnostics_csv_columns[i];
    }
    out << '\n';
    double prev_t = -std::numeric_limits<double>::infinity();
    for (const auto& r : records) {
        if (!(r.t > prev_t)) throw IoError("diagnostics records must have increasing t");
        prev_t = r.t;
        for (double v : numeric_fields(r)) out << format_double_17(v) << ',';
        out << (r.envelope_ok ? 1 : 0) << '\n';
    }
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_diagnostics_csv(out, records);
    if (!out) throw IoError("short write to " + path);
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty diagnostics csv " + path);

    std::vector<DiagnosticsRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<double, 22> fields{};
        std::size_t pos = 0;
        for (int i = 0; i < 22; ++i) {
            const std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) throw IoError("malformed csv row in " + path);
            fields[i] = std::strtod(line.substr(pos, comma - pos).c_str(), nullptr);
            pos = comma + 1;
        }
        DiagnosticsRecord r;
        assign_numeric(r, fields);
        r.envelope_ok = line.substr(pos) == "1";
        out.push_back(r);
    }
    return out;
}

}  // namespace helns
