#ifndef GCX_SPECTRAL_HPP
#define GCX_SPECTRAL_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gcx/coeff.hpp"

namespace gcx {

// Dimensions indexed by (column, row). Columns are total degrees. Rows are the
// sum of label degrees (internal filtration, the negative of the internal degree
// r = m + s) or the sum of genus labels (genus filtration).
struct BigradedTable {
    std::string filtration;  // "internal" or "genus"
    int page = 0;
    int g = 0;
    int n = 0;
    std::map<std::pair<int, int>, long> dims;

    long total() const;
    long row_total(int row) const;
    std::map<int, long> row(int r) const;  // column -> dim
    // CSV lines "page,row,col,dim". raw=true reports the internal degree r instead of -r.
    std::string to_csv(bool raw = false, bool header = true) const;
    // Text grid, rows descending, columns ascending.
    std::string to_grid() const;
};

struct SpectralPages {
    BigradedTable e0, e1;
};

// E0 and E1 of the internal degree filtration of the Feynman transform of a strong
// structure at (g,n). NotStrong if the differential leaves a row.
SpectralPages internal_pages(std::shared_ptr<const CoeffSystem> a, int g, int n);

// Genus 0 part of a system, extended by zero to higher genus.
std::shared_ptr<CoeffSystem> cyclic_part(std::shared_ptr<const CoeffSystem> sys);

// Row 0 of L0 and L1 for the genus label filtration: the Feynman transform of the
// cyclic part extended by zero, and its homology.
SpectralPages genus_bottom_row(std::shared_ptr<const CoeffSystem> sys, int g, int n);

struct ConvergenceReport {
    bool ok = true;
    std::vector<std::string> lines;
    std::string to_text() const;
};

// Euler characteristic bookkeeping: each row of E0 and E1 has the same Euler
// characteristic, and the total equals the abutment's.
ConvergenceReport convergence_check(const BigradedTable& e0, const BigradedTable& e1, long abutment_chi);

inline const char* higher_pages_note() { return "page >= 2: not computed"; }

}  // namespace gcx

#endif
