#include "sumcover/report.hpp"

#include <cstdio>

#include "sumcover/digest.hpp"
#include "sumcover/version.hpp"

namespace sumcover {

json make_report(const ReportMeta& meta, json outputs) {
    json r;
    r["schema"] = "sumcover/report-v1";
    r["version"] = version_string;
    r["command"] = meta.command;
    r["input_digest"] = meta.input_digest;
    r["seed"] = meta.seed;
    r["outputs"] = std::move(outputs);
    r["report_digest"] = sha256_hex(r.dump());
    if (meta.timing) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3f", meta.wall_ms);
        r["wall_time_ms"] = buf;
    }
    return r;
}

json big_json(const mpz_class& v) { return json(v.get_str()); }

json rational_json(const mpq_class& v) {
    json j;
    j["num"] = v.get_num().get_str();
    j["den"] = v.get_den().get_str();
    return j;
}

json enclosure_json(const RealEnclosure& e) {
    char lo[64], hi[64];
    std::snprintf(lo, sizeof(lo), "%.17g", e.lo);
    std::snprintf(hi, sizeof(hi), "%.17g", e.hi);
    json j;
    j["decimal"] = e.decimal;
    j["lo"] = lo;
    j["hi"] = hi;
    return j;
}

}  // namespace sumcover
