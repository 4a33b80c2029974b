#ifndef GCX_INDUCED_HPP
#define GCX_INDUCED_HPP

#include <map>
#include <memory>
#include <set>
#include <utility>

#include "gcx/coeff.hpp"
#include "gcx/feynman.hpp"
#include "gcx/homology.hpp"

namespace gcx {

using Color = std::pair<int, int>;

// Feynman transforms of one coefficient system with homology representatives, per color.
struct HomologyFamily {
    std::shared_ptr<const CoeffSystem> sys;
    std::map<Color, FTComplex> complexes;
    std::map<Color, HomologyResult> homology;
};

// Stable colors a graph of type (g,n) can put on its vertices.
std::set<Color> colors_for_type(int g, int n);

HomologyFamily homology_family(std::shared_ptr<const CoeffSystem> sys, const std::set<Color>& colors);

// Homology basis of a color: degrees ascending, within a degree the order of the representatives.
struct HomologyBasis {
    std::vector<int> degrees;
    std::map<int, int> offset;  // degree -> first index
};
HomologyBasis homology_basis(const HomologyResult& h);

// The modular operad structure on homology: gluing along a new edge, computed as
// the dual cut-sum against the contraction-side representatives. The result has
// the opposite parity, degrees equal to the Feynman transform degrees and the
// family's colors as its exact domain. Even inputs are limited to genus 0 colors
// (ParityMismatch otherwise); ProjectionFailure comes from the homology step.
std::shared_ptr<TableSystem> induced_modular_structure(const HomologyFamily& fam);

}  // namespace gcx

#endif
