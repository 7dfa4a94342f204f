#include "fenergy/csv.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

#include "fenergy/errors.hpp"
#include "fenergy/version.hpp"

namespace fenergy {

CsvWriter::CsvWriter(std::ostream& os, const std::string& params, unsigned long seed)
    : os_(os) {
    os_ << "# fenergy " << kVersion << " seed=" << seed << " " << params << "\n";
}

void CsvWriter::header(const std::vector<std::string>& cols) {
    for (size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
    os_ << "\n";
}

void CsvWriter::row(const std::vector<double>& vals) {
    for (size_t i = 0; i < vals.size(); ++i) os_ << (i ? "," : "") << format(vals[i]);
    os_ << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& vals) {
    for (size_t i = 0; i < vals.size(); ++i) os_ << (i ? "," : "") << vals[i];
    os_ << "\n";
}

void CsvWriter::comment(const std::string& text) { os_ << "# " << text << "\n"; }

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_gridfield_csv(std::ostream& os, const GridField& fld, const std::string& params,
                         unsigned long seed) {
    const GridSpec& spec = fld.spec;
    CsvWriter w(os, params, seed);
    std::ostringstream meta;
    meta << "grid m=" << spec.m << " p=" << fld.p << " k=" << fld.k << " n=" << spec.n[0]
         << "x" << spec.n[1] << "x" << spec.n[2];
    for (int a = 0; a < spec.m; ++a)
        meta << " axis" << a << "=[" << CsvWriter::format(spec.lo[a]) << ","
             << CsvWriter::format(spec.hi[a]) << "]";
    w.comment(meta.str());
    std::vector<std::string> cols;
    for (int a = 0; a < spec.m; ++a) cols.push_back("x" + std::to_string(a));
    const auto& tt = TupleTable::get(spec.m, fld.p);
    for (int t = 0; t < tt.count(); ++t) {
        std::string tag = "c";
        for (int j = 0; j < fld.p; ++j) tag += std::to_string(tt.tuples[t][j]);
        for (int a = 0; a < fld.k; ++a) cols.push_back(tag + "_" + std::to_string(a));
    }
    w.header(cols);
    std::vector<double> vals;
    for (std::ptrdiff_t nd = 0; nd < spec.nodes(); ++nd) {
        vals.clear();
        const auto x = spec.point(nd);
        for (int a = 0; a < spec.m; ++a) vals.push_back(x[a]);
        for (int c = 0; c < fld.ncomp(); ++c) vals.push_back(fld.at(nd, c));
        w.row(vals);
    }
}

GridField read_gridfield_csv(std::istream& is) {
    std::string line;
    int m = 0, p = 0, k = 0;
    std::array<int, 3> n{1, 1, 1};
    std::array<double, 3> lo{0, 0, 0}, hi{0, 0, 0};
    bool have_meta = false;

    // scan comments for the grid metadata line, skip the column header
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("grid m=");
            if (pos != std::string::npos) {
                if (std::sscanf(line.c_str() + pos, "grid m=%d p=%d k=%d n=%dx%dx%d", &m,
                                &p, &k, &n[0], &n[1], &n[2]) == 6) {
                    have_meta = true;
                    for (int a = 0; a < m; ++a) {
                        const std::string key = "axis" + std::to_string(a) + "=[";
                        const auto ap = line.find(key);
                        if (ap == std::string::npos)
                            throw InvalidParameter("grid csv missing axis range");
                        std::sscanf(line.c_str() + ap + key.size(), "%lf,%lf]", &lo[a],
                                    &hi[a]);
                    }
                }
            }
            continue;
        }
        if (line.find_first_not_of("+-0123456789.eE, \t\r") != std::string::npos)
            continue;  // header row
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string cellstr;
        while (std::getline(ss, cellstr, ','))
            if (!cellstr.empty()) vals.push_back(std::stod(cellstr));
        if (!vals.empty()) rows.push_back(std::move(vals));
    }
    if (!have_meta) throw InvalidParameter("grid csv missing metadata comment");

    GridSpec spec(m, n, lo, hi);
    GridField fld(spec, p, k);
    if (static_cast<std::ptrdiff_t>(rows.size()) != spec.nodes())
        throw ShapeMismatch("grid csv row count");
    const int nc = fld.ncomp();
    for (std::ptrdiff_t nd = 0; nd < spec.nodes(); ++nd) {
        const auto& vals = rows[nd];
        if (static_cast<int>(vals.size()) != m + nc)
            throw ShapeMismatch("grid csv column count");
        for (int c = 0; c < nc; ++c) fld.at(nd, c) = vals[m + c];
    }
    return fld;
}

}  // namespace fenergy
