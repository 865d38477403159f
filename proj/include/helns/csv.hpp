#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "helns/diagnostics_record.hpp"

namespace helns {

// Fixed column order of the diagnostics CSV; numeric fields carry 17
// significant digits so re-parsing reproduces every double exactly.
inline constexpr std::array<const char*, 23> diagnostics_csv_columns = {
    "t",           "energy",      "grad_sq",      "Y",            "A32_sq",
    "cond_i",      "cond_ii",     "cond_iii",     "cond_iv",      "a",
    "a_plus_cubed", "a_minus_fifth", "cross_term", "cancel_resid",
    "ineq_3_2_lhs", "ineq_3_2_rhs", "ineq_3_3_lhs", "ineq_3_3_rhs",
    "ineq_3_5_slack", "ineq_3_10_lhs", "ineq_3_10_rhs", "envelope", "envelope_ok"};

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records);
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records);

std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::string& path);

std::string format_double_17(double v);

}  // namespace helns
