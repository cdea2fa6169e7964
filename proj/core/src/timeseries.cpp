#include "curveflow/timeseries.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace curveflow {

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::healthy: return "healthy";
        case RunStatus::aborted_resolution: return "aborted_resolution";
        case RunStatus::aborted_length_drift: return "aborted_length_drift";
        case RunStatus::aborted_nonfinite: return "aborted_nonfinite";
    }
    return "unknown";
}

void TimeSeries::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write series file: " + path);
    out << "t,L,A,i_minus1,i0,i1,i2,i3,i4,min_kappa,cx,cy,r,sigma,dH,bx,by\n";
    char buf[512];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.t, r.length, r.area, r.i_minus1, r.i[0], r.i[1], r.i[2], r.i[3], r.i[4],
                      r.min_kappa, r.center.x, r.center.y, r.radius, r.sigma, r.d_h,
                      r.barycenter.x, r.barycenter.y);
        out << buf;
    }
}

TimeSeries TimeSeries::read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open series file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty series file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,L,A,i_minus1,i0,i1,i2,i3,i4,min_kappa,cx,cy,r,sigma,dH,bx,by")
        throw std::runtime_error(path + ": unexpected series header");
    TimeSeries ts;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) {
            try {
                vals.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error(path + ": unparsable value at data row " + std::to_string(row));
            }
        }
        if (vals.size() != 17)
            throw std::runtime_error(path + ": expected 17 columns at data row " + std::to_string(row));
        SeriesRecord r;
        r.t = vals[0];
        r.length = vals[1];
        r.area = vals[2];
        r.i_minus1 = vals[3];
        for (int k = 0; k < 5; ++k) r.i[static_cast<std::size_t>(k)] = vals[static_cast<std::size_t>(4 + k)];
        r.min_kappa = vals[9];
        r.center = {vals[10], vals[11]};
        r.radius = vals[12];
        r.sigma = vals[13];
        r.d_h = vals[14];
        r.barycenter = {vals[15], vals[16]};
        ts.records.push_back(r);
    }
    return ts;
}

}  // namespace curveflow
