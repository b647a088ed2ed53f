#ifndef MATCHGAP_CONSTRUCTION_HPP
#define MATCHGAP_CONSTRUCTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matchgap/params.hpp"

namespace matchgap {

enum class Case : std::uint8_t { kYes = 0, kNo = 1 };

const char* case_name(Case c) noexcept;
Case case_from_name(const std::string& name);

// Which family a vertex set belongs to at its own level.
enum class SetKind : std::uint8_t { kNone = 0, kA, kB, kD, kS };

char set_kind_letter(SetKind kind) noexcept;

// Per-vertex slot in the layered frame of one level.
//   side:  1..2 for A/B/S sets; 1..4 for D sets at levels > 1
//   layer: 1..r for A/B/D; 0 for S
//   slice: 1-based sub-instance index within the enclosing block at this
//          level; 0 when the level does not split further (level 1) or for
//          padding.
struct Frame {
  SetKind kind = SetKind::kNone;
  std::uint8_t side = 0;
  std::int16_t layer = 0;
  std::int32_t slice = 0;

  bool operator==(const Frame&) const = default;
};

struct VertexSet {
  int level = 0;
  SetKind kind = SetKind::kNone;
  std::uint8_t side = 0;
  std::int32_t layer = 0;
  std::int32_t node = -1;  // owning sub-instance
  std::vector<std::int32_t> vertices;
};

// A family of independent Binomial pair slots between two sets.
struct Gadget {
  int level = 0;
  std::int32_t x_set = -1;
  std::int32_t y_set = -1;
  double density = 0.0;
  std::int64_t slots = 0;  // m: labelled ground slots realizing the density
};

// How a child sub-instance hangs off its parent.
enum class BlockKind : std::uint8_t {
  kChain,      // (A_i^j, B_{i+1}^j), i < r
  kEntry,      // (B_1^j, S^j)
  kDummyPair,  // (D_i^1, D_i^4) / (D_i^2, D_i^3); level 1: gadget instead
  kTop,        // (A_r^1, A_r^2): carries the instance case downward
};

const char* block_kind_name(BlockKind kind) noexcept;

struct NodeChild {
  BlockKind block = BlockKind::kChain;
  std::int32_t node = -1;
};

struct Node {
  int level = 0;
  Case node_case = Case::kYes;
  std::int32_t parent = -1;
  std::uint64_t stream_id = 0;  // context id for construction streams
  std::vector<std::int32_t> sets;
  std::vector<NodeChild> children;
};

// The sampling law governing one vertex pair.
struct PairLaw {
  int level = 0;        // gadget level
  double density = 0.0; // expected multiplicity
  std::int64_t slots = 0;
};

// A fully laid-out instance: vertex placement is random (seeded), all
// other structure is a pure function of (params, case, seed).
struct Instance {
  ParamSet params;
  Case instance_case = Case::kYes;
  std::uint64_t seed = 0;
  std::int32_t n = 0;  // includes padding

  std::vector<Frame> frames;          // n * L, level L first
  std::vector<std::int32_t> set_of;   // n * L, index into sets, or -1
  std::vector<std::uint8_t> part;     // global bipartition side, 0/1
  std::vector<VertexSet> sets;
  std::vector<Gadget> gadgets;
  std::vector<std::vector<std::int32_t>> set_gadgets;  // per set: gadget ids
  std::vector<Node> nodes;            // nodes[0] is the root

  const Frame& frame(std::int32_t v, int level) const;
  std::int32_t set_index(std::int32_t v, int level) const;

  // Resolves the gadget law on an unordered pair by walking the shared
  // frame prefix downward; nullopt when the pair carries no gadget
  // (ground-only).  O(L) per call.
  std::optional<PairLaw> pair_law(std::int32_t u, std::int32_t v) const;

  // Expected number of sampled edges at vertex v (sum over gadgets).
  double expected_degree(std::int32_t v) const;

  // The case a top block path must report at the leaf: kYes unless every
  // descent step goes through a kTop block of a NO node.
  // (Used internally by pair_law; exposed for tests.)
  Case leaf_case(std::int32_t v) const;
};

Instance build_instance(const ParamSet& params, Case instance_case,
                        std::uint64_t seed);

// The root-level matching blocks (these partition the non-padding
// vertices into equal-sized pairs of sets).
struct RootBlock {
  BlockKind block;
  std::int32_t x_set = -1;
  std::int32_t y_set = -1;
};
std::vector<RootBlock> root_blocks(const Instance& instance);

// NO-case blocking witness: the union of all B and D sets of every node
// on the NO path.  Every gadget pair has an endpoint set inside it, so it
// is a vertex cover of any sampled graph; its size certifies
// mu <= |cover| deterministically.
struct CoverWitness {
  std::vector<std::int32_t> cover;  // sorted vertex ids
  std::vector<std::uint8_t> in_cover;
};
CoverWitness vertex_cover_witness(const Instance& instance);

}  // namespace matchgap

#endif  // MATCHGAP_CONSTRUCTION_HPP
