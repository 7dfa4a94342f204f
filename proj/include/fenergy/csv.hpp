#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fenergy/grid.hpp"

namespace fenergy {

/// Deterministic CSV emitter: one comment line recording version, seed and
/// parameters, then a header row, then data rows.  Numbers are printed with
/// "%.12g" so identical inputs give byte-identical output.
class CsvWriter {
  public:
    CsvWriter(std::ostream& os, const std::string& params, unsigned long seed);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<double>& vals);
    void row_mixed(const std::vector<std::string>& vals);
    void comment(const std::string& text);

    static std::string format(double v);

  private:
    std::ostream& os_;
};

/// Grid field serialization: a metadata comment, a header, then one row per
/// node (coordinates, then coefficients in lexicographic tuple order,
/// fiber-minor).
void write_gridfield_csv(std::ostream& os, const GridField& fld, const std::string& params,
                         unsigned long seed);
GridField read_gridfield_csv(std::istream& is);

}  // namespace fenergy
