#include "ngwp/pipeline.hpp"

#include "ngwp/pc_ngwp.hpp"
#include "ngwp/vm_ngwp.hpp"

namespace ngwp {

DualDomain build_dual_domain(const Graph& g) {
  EigenSystem es = eigendecompose(g);
  IncidenceMatrix inc = build_incidence(g);
  DualGraph dual = build_dual_graph(es, inc);
  BipartitionTree tree = build_dual_tree(dual);
  return {std::move(es), std::move(inc), std::move(dual), std::move(tree)};
}

PacketDictionary build_dictionary(const DualDomain& domain, DictionaryKind kind,
                                  const BuildParams& params) {
  if (kind == DictionaryKind::VM) return build_vm_dictionary(domain.eigen, domain.tree, params);
  return build_pc_dictionary(domain.eigen, build_paired_tree(domain.eigen, domain.tree), params);
}

}  // namespace ngwp
