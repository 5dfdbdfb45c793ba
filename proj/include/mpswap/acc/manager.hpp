#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mpswap/acc/rsa_accumulator.hpp"

namespace mpswap::acc {

/// One line of an accumulator script or event log.
///
///   insert <elem>
///   remove <elem>
///   batch-insert <elem>...
///   batch-remove <elem>...
///   multiswap <x>:<y>...
///
/// An element token is either `hex:<lowercase hex>` or literal text without
/// whitespace (and without ':' inside multiswap pairs). Blank lines and lines
/// starting with '#' carry no operation.
struct AccOp {
    enum class Kind { kInsert, kRemove, kBatchInsert, kBatchRemove, kMultiSwap };

    Kind kind;
    std::vector<Bytes> elems;     // every kind except kMultiSwap
    std::vector<SwapPair> swaps;  // kMultiSwap only

    /// Canonical log form; elements always written as hex:.
    std::string format() const;
};

/// Throws Error(kDecode) on a malformed line; nullopt for comments/blank lines.
std::optional<AccOp> parse_acc_op(std::string_view line);

/// What an applied operation produced, for reporting.
struct AccOpResult {
    Digest before;
    Digest after;
    std::optional<PoeProof> proof;           // batch ops
    std::optional<MultiSwapProof> swap_proof; // multiswap
};

// The single writer of one accumulated multiset. Every mutation goes through
// apply(), which appends the canonical op line to the event log, so replaying
// the log on the same params reconstructs the state exactly.
class AccumulatorManager {
  public:
    explicit AccumulatorManager(RsaParams params);

    const RsaParams& params() const { return params_; }
    const Multiset& elements() const { return set_; }
    const Digest& digest() const { return digest_; }
    const std::vector<std::string>& log() const { return log_; }

    AccOpResult apply(const AccOp& op);

    AccOpResult insert(ByteView elem);
    AccOpResult remove(ByteView elem);

    MembershipWitness witness(ByteView elem) const { return prove_membership(params_, set_, elem); }
    NonMembershipWitness non_witness(ByteView elem) const { return prove_nonmembership(params_, set_, elem); }

    /// Rebuilds a manager from event-log lines.
    static AccumulatorManager replay(RsaParams params, const std::vector<std::string>& lines);
    void write_log(std::ostream& out) const;

  private:
    RsaParams params_;
    Multiset set_;
    Digest digest_;
    std::vector<std::string> log_;
};

} // namespace mpswap::acc
