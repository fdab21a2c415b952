#pragma once

#include "ngwp/dictionary.hpp"
#include "ngwp/dual_geometry.hpp"
#include "ngwp/graph.hpp"
#include "ngwp/partition_tree.hpp"
#include "ngwp/spectral.hpp"

namespace ngwp {

/// Everything both dictionary constructions share: the eigensystem, the
/// incidence matrix, the DAG dual graph and its bipartition tree.
struct DualDomain {
  EigenSystem eigen;
  IncidenceMatrix incidence;
  DualGraph dual;
  BipartitionTree tree;
};

DualDomain build_dual_domain(const Graph& g);

PacketDictionary build_dictionary(const DualDomain& domain, DictionaryKind kind,
                                  const BuildParams& params = {});

}  // namespace ngwp
