#pragma once

#include <string>
#include <vector>

#include "reacalc/contract.hpp"

namespace rc {

// A synchronization set over whole channels: an event belongs to it exactly
// when its channel does.
struct ChannelSet {
  std::vector<std::string> channels;
};

ChannelSet cs_of(std::vector<std::string> channels);
bool cs_member(const ChannelSet& cs, const std::string& chan);

// The set of maximal interleavings of two concrete traces, synchronizing on
// the channels in cs. Sorted and deduplicated.
std::vector<std::vector<EventVal>> trace_merge_concrete(const std::vector<EventVal>& t1,
                                                        const std::vector<EventVal>& t2,
                                                        const ChannelSet& cs);

// One way of merging two symbolic traces: the merged trace plus the
// data-equality constraints collected from synchronized positions.
struct MergeResidual {
  Expr cond;
  TraceExpr trace;
};

bool operator==(const MergeResidual& a, const MergeResidual& b);
std::string show(const MergeResidual& r);

// Symbolic trace merge, restricted to merges whose cs-projections agree: the
// projected channel sequences must coincide, and each paired data position
// contributes an equality constraint to every residual's condition. Traces
// whose projected channel sequences differ have no residuals.
std::vector<MergeResidual> trace_merge_symbolic(const TraceExpr& t1, const TraceExpr& t2,
                                                const ChannelSet& cs);

// Frame-respecting update merge: keeps sg1's effect on ns1 and sg2's on ns2,
// identity elsewhere. Raises LensOverlap when the frames intersect.
Subst subst_par_merge(const Subst& sg1, const LensSet& ns1, const Subst& sg2, const LensSet& ns2);

// Merge of two terminated observations: one disjunct per trace residual,
// carrying both conditions and the frame-merged update. No residuals yields
// the empty (false) relation.
PostRel merge_finalisers(const PhiTerm& p, const PhiTerm& q, const LensSet& ns1,
                         const ChannelSet& cs, const LensSet& ns2);

// Merge of two quiescent observations. The composition accepts a synchronized
// event only when both sides offer it, and an unsynchronized event when
// either side does.
PeriRel merge_quiescent(const ETerm& p, const ETerm& q, const ChannelSet& cs);
// Merge of a quiescent observation with a terminated one: only p's
// unsynchronized offers remain, since the finished side can no longer engage
// in cs events.
PeriRel merge_quiescent(const ETerm& p, const PhiTerm& q, const ChannelSet& cs);

// Weakest assumption under which the observation p, running alongside the
// partner's divergence threshold q, cannot complete a trace that crosses the
// threshold. ext_bound caps the length of the enumerated boundary traces; -1
// selects |p's trace| + |q's trace|. Raises ExtensionBoundExceeded when a
// boundary trace would exceed the cap.
PreRel wrely(const PhiTerm& p, const ITerm& q, const ChannelSet& cs, int ext_bound = -1);
PreRel wrely(const ETerm& p, const ITerm& q, const ChannelSet& cs, int ext_bound = -1);

// Parallel composition: c1 owns the ns1 region of the final state, c2 owns
// ns2, and the two synchronize on the channels in cs.
Contract par_contract(const Contract& c1, const LensSet& ns1, const ChannelSet& cs,
                      const LensSet& ns2, const Contract& c2);

}  // namespace rc
