#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "swl/errors.hpp"
#include "swl/spectrum.hpp"
#include "swl/stats.hpp"
#include "swl/dpd.hpp"
#include "swl/re_region.hpp"

namespace swl {

// All CSV output: UTF-8, comma separator, mandatory header row, LF line
// endings, '.' decimal point. %.17g keeps doubles round-trippable and the
// files byte-stable across runs.
inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw config_error("cannot open output file: " + path);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

inline void write_ccdf_csv(const std::string& path, const std::vector<CcdfPoint>& pts) {
    CsvWriter w(path);
    w.row({"threshold_db", "probability"});
    for (const CcdfPoint& p : pts) w.row({csv_num(p.threshold_db), csv_num(p.probability)});
}

inline void write_psd_csv(const std::string& path, const SpectrumEstimate& spec) {
    CsvWriter w(path);
    w.row({"freq_hz", "psd_db"});
    for (std::size_t i = 0; i < spec.freqs_hz.size(); ++i)
        w.row({csv_num(spec.freqs_hz[i]), csv_num(spec.psd_db[i])});
}

inline void write_dpd_report_csv(const std::string& path, const DpdReport& rep) {
    CsvWriter w(path);
    w.row({"n", "iterations", "converged", "residual"});
    for (std::size_t n = 0; n < rep.residual.size(); ++n)
        w.row({std::to_string(n), std::to_string(rep.iterations_per_sample[n]),
               rep.converged[n] ? "1" : "0", csv_num(rep.residual[n])});
}

inline void write_re_region_csv(const std::string& path, const ReRegion& region) {
    CsvWriter w(path);
    w.row({"split", "rate_bps_hz", "energy_w"});
    for (const RePoint& p : region.points)
        w.row({csv_num(p.split), csv_num(p.rate_bps_hz), csv_num(p.energy_w)});
}

} // namespace swl
