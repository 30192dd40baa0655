#pragma once

#include <gmpxx.h>

#include <string>

#include "sumcover/energy.hpp"
#include "sumcover/instance.hpp"

namespace sumcover {

// Reports carry command, input digest, seed, outputs, artifact version.
// report_digest is computed over everything except itself and wall_time_ms,
// so documents are byte-identical for fixed (input digest, seed, version);
// timing is opt-in and never feeds the digest.
struct ReportMeta {
    std::string command;
    std::string input_digest;
    uint64_t seed = 0;
    bool timing = false;
    double wall_ms = 0.0;
};

json make_report(const ReportMeta& meta, json outputs);

// Exact values in reports: big integers as decimal strings, rationals as
// num/den string pairs, reals as enclosures of decimal strings.
json big_json(const mpz_class& v);
json rational_json(const mpq_class& v);
json enclosure_json(const RealEnclosure& e);

}  // namespace sumcover
