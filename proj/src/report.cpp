#include "setmap/report.hpp"

#include <cstdio>
#include <sstream>

namespace setmap {

std::string format_ratio(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string emit_csv(const std::vector<TrialRow>& rows)
{
    std::ostringstream out;
    out << "seed,N,C,ell,retries,success,rule_a_rejects,rule_b_rejects,rule_c_rejects,"
           "prop1_ok,prop2_max_ratio,prop3_max_ratio\n";
    for (const auto& r : rows) {
        out << r.seed << ',' << r.host << ',';
        if (r.multiplier > 0)
            out << r.multiplier;
        out << ',' << r.ell << ',' << r.retries << ',' << (r.success ? 1 : 0) << ','
            << r.rej_a << ',' << r.rej_b << ',' << r.rej_c << ',' << (r.prop1_ok ? 1 : 0) << ',';
        if (r.prop2_max_ratio >= 0)
            out << format_ratio(r.prop2_max_ratio);
        out << ',' << format_ratio(r.prop3_max_ratio) << '\n';
    }
    return out.str();
}

} // namespace setmap
