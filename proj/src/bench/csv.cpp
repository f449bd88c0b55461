#include "tensorjl/bench/csv.hpp"

#include "tensorjl/error.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace tensorjl::bench {

namespace {

template <class T>
void write_optional(std::ostream& os, const std::optional<T>& v) {
    if (v) os << *v;
}

// Identifiers are generated internally, but quote defensively anyway.
void write_field(std::ostream& os, const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        os << s;
        return;
    }
    os << '"';
    for (char c : s) {
        if (c == '"') os << '"';
        os << c;
    }
    os << '"';
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<ResultRecord>& records) {
    os << kCsvHeader << '\n';
    for (const auto& r : records) {
        os << kSchemaVersion << ',';
        write_field(os, r.experiment);
        os << ',';
        write_field(os, r.regime);
        os << ',';
        write_field(os, r.family);
        os << ',';
        write_optional(os, r.rank);
        os << ',';
        write_optional(os, r.k);
        os << ',';
        write_optional(os, r.trial);
        os << ',' << r.seed << ',';
        write_field(os, r.metric);
        os << ',' << format_double(r.value) << ',';
        if (r.wall_time_s) os << format_double(*r.wall_time_s);
        os << ',';
        write_field(os, r.rng);
        os << ',' << r.threads << '\n';
    }
}

void write_csv_file(const std::string& path, const std::vector<ResultRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    write_csv(out, records);
    if (!out) throw Error("failed writing output file '" + path + "'");
}

}  // namespace tensorjl::bench
