#pragma once

#include <span>

#include "rpp/field.hpp"
#include "rpp/instances.hpp"
#include "rpp/linalg.hpp"
#include "rpp/tables.hpp"

namespace rpp {

/// Q(xbar, z) for directed instances: the sum over subsets I of components
/// avoiding the anchor (component 0) of det(A_I) * det(A_complement), where
/// A_I is indexed by the imbalanced vertices inside V_I. Non-square blocks
/// contribute 0, the empty block 1. Over characteristic two the surviving
/// terms are exactly the perfect matchings whose extension connects the
/// required graph.
Fe eval_Q_directed(const Field& f, const ZetaTables& zt, const NormalizedEe& inst);

/// Undirected variant: Pfaffians of the odd-set blocks replace determinants.
Fe eval_Q_undirected(const Field& f, const ZetaTables& zt, const NormalizedEe& inst);

/// p(X,Y,z) for conjoining bipartite matching: sum over request subsets S of
/// det A_{-S}, where A_{-S} zeroes every entry whose request variable lies in
/// S. x_edges follows inst.edges order, y_requests follows inst.requests.
Fe eval_p_cbm(const Field& f, const CbmInstance& inst, std::span<const Fe> x_edges,
              std::span<const Fe> y_requests, Fe z);

/// General-matching variant with the Tutte-style symmetric matrix and
/// Pfaffians in place of determinants.
Fe eval_p_cgm(const Field& f, const CbmInstance& inst, std::span<const Fe> x_edges,
              std::span<const Fe> y_requests, Fe z);

}  // namespace rpp
