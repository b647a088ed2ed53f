#include "matchgap/construction.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "matchgap/densities.hpp"
#include "matchgap/rng.hpp"

namespace matchgap {

const char* case_name(Case c) noexcept {
  return c == Case::kYes ? "yes" : "no";
}

Case case_from_name(const std::string& name) {
  if (name == "yes" || name == "YES") return Case::kYes;
  if (name == "no" || name == "NO") return Case::kNo;
  throw Error(Errc::kInvalidParam, "case must be 'yes' or 'no', got '" + name + "'");
}

char set_kind_letter(SetKind kind) noexcept {
  switch (kind) {
    case SetKind::kA: return 'A';
    case SetKind::kB: return 'B';
    case SetKind::kD: return 'D';
    case SetKind::kS: return 'S';
    case SetKind::kNone: break;
  }
  return '-';
}

const char* block_kind_name(BlockKind kind) noexcept {
  switch (kind) {
    case BlockKind::kChain: return "chain";
    case BlockKind::kEntry: return "entry";
    case BlockKind::kDummyPair: return "dummy_pair";
    case BlockKind::kTop: return "top";
  }
  return "?";
}

namespace {

// Identity of the block a frame belongs to at its level (levels > 1 only).
// Two vertices share a sub-instance one level down iff their block ids and
// slices both match.
struct BlockId {
  BlockKind kind;
  std::int32_t id;
  bool operator==(const BlockId&) const = default;
};

BlockId block_of(const Frame& f, std::int64_t layers) {
  switch (f.kind) {
    case SetKind::kA:
      if (f.layer == layers) return {BlockKind::kTop, 0};
      return {BlockKind::kChain, f.side * (1 << 16) + f.layer};
    case SetKind::kB:
      if (f.layer == 1) return {BlockKind::kEntry, f.side};
      return {BlockKind::kChain, f.side * (1 << 16) + (f.layer - 1)};
    case SetKind::kS:
      return {BlockKind::kEntry, f.side};
    case SetKind::kD: {
      // (D^1, D^4) pair up, as do (D^2, D^3).
      const std::int32_t pair = (f.side == 1 || f.side == 4) ? 0 : 1;
      return {BlockKind::kDummyPair, pair * (1 << 16) + f.layer};
    }
    case SetKind::kNone:
      break;
  }
  throw Error(Errc::kInternal, "block_of on an empty frame");
}

// Own-level gadget density between two level-1 frames, given the leaf
// case; -1 when the pair carries no gadget.
double level1_density(const ParamSet& p, Case c, Frame a, Frame b) {
  if (a.kind > b.kind) std::swap(a, b);  // order: A < B < D < S
  const std::int64_t r = p.layers;
  if (a.kind == SetKind::kA && b.kind == SetKind::kA) {
    if (c == Case::kYes && a.layer == r && b.layer == r && a.side != b.side) {
      return density_cross_top_yes(p);
    }
    return -1.0;
  }
  if (a.kind == SetKind::kB && b.kind == SetKind::kB) {
    if (a.layer == r && b.layer == r && a.side != b.side) {
      return c == Case::kYes ? density_closing_top_yes(p)
                             : density_closing_top_no(p);
    }
    return -1.0;
  }
  if (a.kind == SetKind::kA && b.kind == SetKind::kB) {
    if (a.side != b.side) return -1.0;
    if (a.layer == b.layer) {
      if (a.layer < r) return density_dense(p, 1);
      return c == Case::kYes ? density_dense_top_yes(p)
                             : density_dense_top_no(p);
    }
    if (a.layer == b.layer - 1) return density_sparse(p);
    return -1.0;
  }
  if (a.kind == SetKind::kB && b.kind == SetKind::kS) {
    if (a.side == b.side && a.layer == 1) return density_sparse(p);
    return -1.0;
  }
  if (a.kind == SetKind::kA && b.kind == SetKind::kD) {
    if (b.side != 3 - a.side || b.layer > a.layer) return -1.0;
    return b.layer < a.layer ? density_dummy(p, 1)
                             : density_dummy_layer(p, 1, a.layer);
  }
  if (a.kind == SetKind::kB && b.kind == SetKind::kD) {
    if (b.side != a.side || b.layer > a.layer) return -1.0;
    return b.layer < a.layer ? density_dummy(p, 1)
                             : density_dummy_layer(p, 1, a.layer);
  }
  if (a.kind == SetKind::kD && b.kind == SetKind::kD) {
    if (a.side == b.side) return -1.0;
    if (a.layer == b.layer) return density_dummy_self(p, 1, a.layer);
    return density_dummy(p, 1);
  }
  return -1.0;
}

// Own-level gadget density between two frames at level > 1 that do not
// share a sub-instance; -1 when the pair carries no gadget.
double upper_density(const ParamSet& p, int level, Frame a, Frame b) {
  if (a.kind > b.kind) std::swap(a, b);
  if (a.kind == SetKind::kA && b.kind == SetKind::kB) {
    if (a.side == b.side && a.layer == b.layer) return density_dense(p, level);
    return -1.0;
  }
  if (a.kind == SetKind::kA && b.kind == SetKind::kD) {
    const bool side_ok = b.side == 3 - a.side || b.side == 5 - a.side;
    if (!side_ok || b.layer > a.layer) return -1.0;
    return b.layer < a.layer ? density_dummy(p, level)
                             : density_dummy_layer(p, level, a.layer);
  }
  if (a.kind == SetKind::kB && b.kind == SetKind::kD) {
    const bool side_ok = b.side == a.side || b.side == a.side + 2;
    if (!side_ok || b.layer > a.layer) return -1.0;
    return b.layer < a.layer ? density_dummy(p, level)
                             : density_dummy_layer(p, level, a.layer);
  }
  if (a.kind == SetKind::kD && b.kind == SetKind::kD) {
    const Frame& odd = (a.side % 2 == 1) ? a : b;
    const Frame& even = (a.side % 2 == 1) ? b : a;
    if (odd.side % 2 != 1 || even.side % 2 != 0) return -1.0;
    if (odd.layer != even.layer) return density_dummy(p, level);
    // Same layer: only the (1,2) / (3,4) combinations carry the closing
    // gadget; (1,4) and (2,3) are the recursive block pairs.
    if (even.side == odd.side + 1) return density_dummy_self(p, level, odd.layer);
    return -1.0;
  }
  return -1.0;
}

class Builder {
 public:
  Builder(Instance& inst) : inst_(inst), p_(inst.params), levels_(inst.params.levels) {}

  void run(std::vector<std::int32_t> side1, std::vector<std::int32_t> side2) {
    build_node(levels_, inst_.instance_case, std::move(side1), std::move(side2),
               rng::mix(0x67617467u, 0), -1);
  }

 private:
  Frame& frame_ref(std::int32_t v, int level) {
    return inst_.frames[static_cast<std::size_t>(v) * levels_ + (levels_ - level)];
  }

  std::int32_t add_set(std::int32_t node, int level, SetKind kind,
                       std::uint8_t side, std::int32_t layer,
                       std::vector<std::int32_t> ids) {
    const auto idx = static_cast<std::int32_t>(inst_.sets.size());
    for (std::int32_t v : ids) {
      frame_ref(v, level) = Frame{kind, side, static_cast<std::int16_t>(layer), 0};
      inst_.set_of[static_cast<std::size_t>(v) * levels_ + (levels_ - level)] = idx;
    }
    inst_.sets.push_back(VertexSet{level, kind, side, layer, node, std::move(ids)});
    inst_.set_gadgets.emplace_back();
    inst_.nodes[static_cast<std::size_t>(node)].sets.push_back(idx);
    return idx;
  }

  void add_gadget(int level, std::int32_t x, std::int32_t y, double density) {
    if (density < 0.0) {
      throw Error(Errc::kInternal, "negative gadget density emitted");
    }
    const auto idx = static_cast<std::int32_t>(inst_.gadgets.size());
    inst_.gadgets.push_back(
        Gadget{level, x, y, density, p_.pair_slots(level, density)});
    inst_.set_gadgets[static_cast<std::size_t>(x)].push_back(idx);
    inst_.set_gadgets[static_cast<std::size_t>(y)].push_back(idx);
  }

  static std::vector<std::int32_t> take(std::vector<std::int32_t>& pool,
                                        std::size_t& at, std::size_t count) {
    std::vector<std::int32_t> out(pool.begin() + static_cast<std::ptrdiff_t>(at),
                                  pool.begin() + static_cast<std::ptrdiff_t>(at + count));
    at += count;
    return out;
  }

  std::int32_t build_node(int level, Case node_case,
                          std::vector<std::int32_t> side1,
                          std::vector<std::int32_t> side2, std::uint64_t sid,
                          std::int32_t parent) {
    const auto node = static_cast<std::int32_t>(inst_.nodes.size());
    inst_.nodes.push_back(Node{level, node_case, parent, sid, {}, {}});

    const auto set_n = static_cast<std::size_t>(p_.set_size_at(level));
    const auto dummy_n = static_cast<std::size_t>(p_.dummy_size_at(level));
    const auto layers = p_.layers;
    const std::size_t top_n =
        level == 1 ? set_n - static_cast<std::size_t>(rat_xi_n())
                   : set_n;
    // Per side: A_1..A_{r-1}, A_r, B_1..B_r, the D families, and S.
    const std::size_t expect =
        level == 1
            ? 2 * static_cast<std::size_t>(layers) * set_n + top_n +
                  static_cast<std::size_t>(layers) * dummy_n
            : 2 * static_cast<std::size_t>(layers) * set_n +
                  2 * static_cast<std::size_t>(layers) * dummy_n + set_n;
    if (side1.size() != expect || side2.size() != expect) {
      std::ostringstream os;
      os << "level " << level << " side size " << side1.size() << "/"
         << side2.size() << ", expected " << expect;
      throw Error(Errc::kInternal, os.str());
    }

    {
      rng::Stream order1(inst_.seed, rng::mix(sid, 1), rng::Tag::kPartOrder);
      rng::shuffle(side1, order1);
      rng::Stream order2(inst_.seed, rng::mix(sid, 2), rng::Tag::kPartOrder);
      rng::shuffle(side2, order2);
    }

    // Set indices by [side][layer]; D sides run 1..4 at levels > 1.
    std::array<std::vector<std::int32_t>, 3> A, B, S;
    std::array<std::vector<std::int32_t>, 5> D;
    for (auto& v : A) v.assign(static_cast<std::size_t>(layers) + 1, -1);
    for (auto& v : B) v.assign(static_cast<std::size_t>(layers) + 1, -1);
    for (auto& v : D) v.assign(static_cast<std::size_t>(layers) + 1, -1);
    for (auto& v : S) v.assign(1, -1);

    auto carve_side = [&](std::vector<std::int32_t>& pool, int a_side,
                          int b_side, std::initializer_list<int> d_sides,
                          int s_side) {
      std::size_t at = 0;
      for (std::int64_t i = 1; i <= layers; ++i) {
        const std::size_t sz = (level == 1 && i == layers) ? top_n : set_n;
        A[static_cast<std::size_t>(a_side)][static_cast<std::size_t>(i)] =
            add_set(node, level, SetKind::kA, static_cast<std::uint8_t>(a_side),
                    static_cast<std::int32_t>(i), take(pool, at, sz));
      }
      for (std::int64_t i = 1; i <= layers; ++i) {
        B[static_cast<std::size_t>(b_side)][static_cast<std::size_t>(i)] =
            add_set(node, level, SetKind::kB, static_cast<std::uint8_t>(b_side),
                    static_cast<std::int32_t>(i), take(pool, at, set_n));
      }
      for (int d_side : d_sides) {
        for (std::int64_t i = 1; i <= layers; ++i) {
          D[static_cast<std::size_t>(d_side)][static_cast<std::size_t>(i)] =
              add_set(node, level, SetKind::kD, static_cast<std::uint8_t>(d_side),
                      static_cast<std::int32_t>(i), take(pool, at, dummy_n));
        }
      }
      S[static_cast<std::size_t>(s_side)][0] =
          add_set(node, level, SetKind::kS, static_cast<std::uint8_t>(s_side), 0,
                  take(pool, at, set_n));
      if (at != pool.size()) {
        throw Error(Errc::kInternal, "side not fully carved into sets");
      }
    };

    if (level == 1) {
      carve_side(side1, /*a=*/1, /*b=*/2, {1}, /*s=*/1);
      carve_side(side2, /*a=*/2, /*b=*/1, {2}, /*s=*/2);
    } else {
      carve_side(side1, 1, 2, {1, 3}, 1);
      carve_side(side2, 2, 1, {2, 4}, 2);
    }

    auto a_at = [&](int j, std::int64_t i) { return A[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]; };
    auto b_at = [&](int j, std::int64_t i) { return B[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]; };
    auto d_at = [&](int j, std::int64_t i) { return D[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]; };
    auto s_at = [&](int j) { return S[static_cast<std::size_t>(j)][0]; };

    if (level == 1) {
      for (int j = 1; j <= 2; ++j) {
        for (std::int64_t i = 1; i < layers; ++i) {
          add_gadget(1, b_at(j, i), a_at(j, i), density_dense(p_, 1));
        }
        for (std::int64_t i = 2; i <= layers; ++i) {
          add_gadget(1, b_at(j, i), a_at(j, i - 1), density_sparse(p_));
        }
        add_gadget(1, s_at(j), b_at(j, 1), density_sparse(p_));
        add_gadget(1, a_at(j, layers), b_at(j, layers),
                   node_case == Case::kYes ? density_dense_top_yes(p_)
                                           : density_dense_top_no(p_));
        for (std::int64_t i = 1; i <= layers; ++i) {
          for (std::int64_t k = 1; k <= i; ++k) {
            const double dd = k < i ? density_dummy(p_, 1)
                                    : density_dummy_layer(p_, 1, i);
            add_gadget(1, a_at(j, i), d_at(3 - j, k), dd);
            add_gadget(1, b_at(j, i), d_at(j, k), dd);
          }
        }
      }
      for (std::int64_t i = 1; i <= layers; ++i) {
        for (std::int64_t k = 1; k <= layers; ++k) {
          if (i == k) continue;
          add_gadget(1, d_at(1, i), d_at(2, k), density_dummy(p_, 1));
        }
        add_gadget(1, d_at(1, i), d_at(2, i), density_dummy_self(p_, 1, i));
      }
      if (node_case == Case::kYes) {
        add_gadget(1, a_at(1, layers), a_at(2, layers), density_cross_top_yes(p_));
        add_gadget(1, b_at(1, layers), b_at(2, layers), density_closing_top_yes(p_));
      } else {
        add_gadget(1, b_at(1, layers), b_at(2, layers), density_closing_top_no(p_));
      }
      return node;
    }

    // Own-level gadgets above level 1.
    for (int j = 1; j <= 2; ++j) {
      for (std::int64_t i = 1; i <= layers; ++i) {
        add_gadget(level, b_at(j, i), a_at(j, i), density_dense(p_, level));
        for (std::int64_t k = 1; k <= i; ++k) {
          const double dd = k < i ? density_dummy(p_, level)
                                  : density_dummy_layer(p_, level, i);
          add_gadget(level, b_at(j, i), d_at(j, k), dd);
          add_gadget(level, b_at(j, i), d_at(j + 2, k), dd);
          add_gadget(level, a_at(j, i), d_at(3 - j, k), dd);
          add_gadget(level, a_at(j, i), d_at(5 - j, k), dd);
        }
      }
    }
    for (int jo : {1, 3}) {
      for (int je : {2, 4}) {
        for (std::int64_t i = 1; i <= layers; ++i) {
          for (std::int64_t k = 1; k <= layers; ++k) {
            if (i == k) continue;
            add_gadget(level, d_at(jo, i), d_at(je, k), density_dummy(p_, level));
          }
        }
      }
    }
    for (int jo : {1, 3}) {
      for (std::int64_t i = 1; i <= layers; ++i) {
        add_gadget(level, d_at(jo, i), d_at(jo + 1, i),
                   density_dummy_self(p_, level, i));
      }
    }

    // Recursive blocks.  The X side becomes part 1 of each child.
    const auto slice_count = static_cast<std::size_t>(p_.slices());
    auto recurse_sliced = [&](BlockKind block, std::int32_t code,
                              std::int32_t x_set, std::int32_t y_set,
                              Case child_case) {
      // Copies: the sets vector reallocates while children register.
      const std::vector<std::int32_t> xs =
          inst_.sets[static_cast<std::size_t>(x_set)].vertices;
      const std::vector<std::int32_t> ys =
          inst_.sets[static_cast<std::size_t>(y_set)].vertices;
      if (xs.size() != ys.size() || xs.size() % slice_count != 0) {
        throw Error(Errc::kInternal, "block sides do not slice evenly");
      }
      const std::size_t chunk = xs.size() / slice_count;
      for (std::size_t t = 0; t < slice_count; ++t) {
        std::vector<std::int32_t> cx(xs.begin() + static_cast<std::ptrdiff_t>(t * chunk),
                                     xs.begin() + static_cast<std::ptrdiff_t>((t + 1) * chunk));
        std::vector<std::int32_t> cy(ys.begin() + static_cast<std::ptrdiff_t>(t * chunk),
                                     ys.begin() + static_cast<std::ptrdiff_t>((t + 1) * chunk));
        for (std::int32_t v : cx) frame_ref(v, level).slice = static_cast<std::int32_t>(t + 1);
        for (std::int32_t v : cy) frame_ref(v, level).slice = static_cast<std::int32_t>(t + 1);
        const std::uint64_t child_sid =
            rng::mix(rng::mix(sid, static_cast<std::uint64_t>(code)), t);
        const std::int32_t child =
            build_node(level - 1, child_case, std::move(cx), std::move(cy),
                       child_sid, node);
        inst_.nodes[static_cast<std::size_t>(node)].children.push_back(
            NodeChild{block, child});
      }
    };
    auto recurse_whole = [&](BlockKind block, std::int32_t code,
                             std::int32_t x_set, std::int32_t y_set) {
      const std::vector<std::int32_t> xs =
          inst_.sets[static_cast<std::size_t>(x_set)].vertices;
      const std::vector<std::int32_t> ys =
          inst_.sets[static_cast<std::size_t>(y_set)].vertices;
      if (xs.size() != ys.size()) {
        throw Error(Errc::kInternal, "dummy block sides differ in size");
      }
      for (std::int32_t v : xs) frame_ref(v, level).slice = 1;
      for (std::int32_t v : ys) frame_ref(v, level).slice = 1;
      const std::uint64_t child_sid =
          rng::mix(rng::mix(sid, static_cast<std::uint64_t>(code)), 0);
      const std::int32_t child = build_node(
          level - 1, Case::kYes, std::vector<std::int32_t>(xs), std::vector<std::int32_t>(ys),
          child_sid, node);
      inst_.nodes[static_cast<std::size_t>(node)].children.push_back(
          NodeChild{block, child});
    };

    std::int32_t code = 1;
    for (int j = 1; j <= 2; ++j) {
      for (std::int64_t i = 1; i < layers; ++i) {
        recurse_sliced(BlockKind::kChain, code++, a_at(j, i), b_at(j, i + 1),
                       Case::kYes);
      }
      recurse_sliced(BlockKind::kEntry, code++, b_at(j, 1), s_at(j), Case::kYes);
    }
    for (std::int64_t i = 1; i <= layers; ++i) {
      recurse_whole(BlockKind::kDummyPair, code++, d_at(1, i), d_at(4, i));
      recurse_whole(BlockKind::kDummyPair, code++, d_at(2, i), d_at(3, i));
    }
    recurse_sliced(BlockKind::kTop, code++, a_at(1, layers), a_at(2, layers),
                   node_case);
    return node;
  }

  std::int64_t rat_xi_n() const {
    const Rat v = p_.xi * p_.set_size_exact(1);
    if (denominator(v) != 1) {
      throw Error(Errc::kNonIntegralSize, "xi N_1 must be integral");
    }
    return numerator(v).convert_to<std::int64_t>();
  }

  Instance& inst_;
  const ParamSet& p_;
  int levels_;
};

}  // namespace

const Frame& Instance::frame(std::int32_t v, int level) const {
  if (v < 0 || v >= n) {
    throw Error(Errc::kVertexOutOfRange,
                "vertex " + std::to_string(v) + " outside [0, " +
                    std::to_string(n) + ")");
  }
  if (level < 1 || level > params.levels) {
    throw Error(Errc::kOutOfRangeLevel, "no frame at level " + std::to_string(level));
  }
  return frames[static_cast<std::size_t>(v) * params.levels +
                (params.levels - level)];
}

std::int32_t Instance::set_index(std::int32_t v, int level) const {
  frame(v, level);  // bounds checks
  return set_of[static_cast<std::size_t>(v) * params.levels +
                (params.levels - level)];
}

std::optional<PairLaw> Instance::pair_law(std::int32_t u, std::int32_t v) const {
  if (u == v) {
    return std::nullopt;
  }
  Case c = instance_case;
  for (int level = params.levels; level >= 1; --level) {
    const Frame& fu = frame(u, level);
    const Frame& fv = frame(v, level);
    if (fu.kind == SetKind::kNone || fv.kind == SetKind::kNone) {
      return std::nullopt;  // padding never carries gadgets
    }
    if (level == 1) {
      const double density = level1_density(params, c, fu, fv);
      if (density < 0.0) return std::nullopt;
      return PairLaw{1, density, params.pair_slots(1, density)};
    }
    const BlockId bu = block_of(fu, params.layers);
    const BlockId bv = block_of(fv, params.layers);
    if (bu == bv && fu.slice == fv.slice) {
      if (bu.kind != BlockKind::kTop) {
        c = Case::kYes;
      }
      continue;
    }
    const double density = upper_density(params, level, fu, fv);
    if (density < 0.0) return std::nullopt;
    return PairLaw{level, density, params.pair_slots(level, density)};
  }
  return std::nullopt;
}

double Instance::expected_degree(std::int32_t v) const {
  double total = 0.0;
  for (int level = 1; level <= params.levels; ++level) {
    const std::int32_t s = set_index(v, level);
    if (s < 0) continue;
    for (std::int32_t g : set_gadgets[static_cast<std::size_t>(s)]) {
      const Gadget& gadget = gadgets[static_cast<std::size_t>(g)];
      const std::int32_t other = gadget.x_set == s ? gadget.y_set : gadget.x_set;
      total += gadget.density *
               static_cast<double>(sets[static_cast<std::size_t>(other)].vertices.size());
    }
  }
  return total;
}

Case Instance::leaf_case(std::int32_t v) const {
  Case c = instance_case;
  for (int level = params.levels; level >= 2; --level) {
    const Frame& f = frame(v, level);
    if (f.kind == SetKind::kNone) {
      return Case::kYes;
    }
    if (block_of(f, params.layers).kind != BlockKind::kTop) {
      c = Case::kYes;
    }
  }
  return c;
}

Instance build_instance(const ParamSet& params, Case instance_case,
                        std::uint64_t seed) {
  if (!params.buildable()) {
    throw Error(Errc::kOverflowScale,
                "parameter set is beyond the materialization bounds");
  }
  Instance inst;
  inst.params = params;
  inst.instance_case = instance_case;
  inst.seed = seed;
  const std::int64_t n_total = params.n();
  const std::int64_t n_top = params.level_size_at(params.levels);
  inst.n = static_cast<std::int32_t>(n_total);
  inst.frames.assign(static_cast<std::size_t>(n_total) * params.levels, Frame{});
  inst.set_of.assign(static_cast<std::size_t>(n_total) * params.levels, -1);
  inst.part.assign(static_cast<std::size_t>(n_total), 0);

  std::vector<std::int32_t> ids(static_cast<std::size_t>(n_top));
  std::iota(ids.begin(), ids.end(), 0);
  {
    rng::Stream top(seed, 0, rng::Tag::kTopShuffle);
    rng::shuffle(ids, top);
  }
  const std::size_t half = ids.size() / 2;
  std::vector<std::int32_t> side1(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<std::int32_t> side2(ids.begin() + static_cast<std::ptrdiff_t>(half), ids.end());
  for (std::int32_t v : side2) {
    inst.part[static_cast<std::size_t>(v)] = 1;
  }
  for (std::int64_t v = n_top; v < n_total; ++v) {
    inst.part[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>((v - n_top) % 2);
  }

  Builder builder(inst);
  builder.run(std::move(side1), std::move(side2));

  // Every placed vertex must own a frame and a set at every level it
  // participates in: level ell spans exactly the vertices of one node.
  for (std::int32_t v = 0; v < static_cast<std::int32_t>(n_top); ++v) {
    for (int level = params.levels; level >= 1; --level) {
      if (inst.frame(v, level).kind == SetKind::kNone ||
          inst.set_index(v, level) < 0) {
        throw Error(Errc::kInternal,
                    "vertex " + std::to_string(v) + " missing a level-" +
                        std::to_string(level) + " frame");
      }
    }
  }
  return inst;
}

std::vector<RootBlock> root_blocks(const Instance& instance) {
  const Node& root = instance.nodes.at(0);
  const std::int64_t layers = instance.params.layers;
  const int level = root.level;
  auto find = [&](SetKind kind, int side, std::int64_t layer) {
    for (std::int32_t s : root.sets) {
      const VertexSet& vs = instance.sets[static_cast<std::size_t>(s)];
      if (vs.kind == kind && vs.side == side && vs.layer == layer) return s;
    }
    throw Error(Errc::kInternal, "root set lookup failed");
  };
  std::vector<RootBlock> out;
  for (int j = 1; j <= 2; ++j) {
    for (std::int64_t i = 1; i < layers; ++i) {
      out.push_back({BlockKind::kChain, find(SetKind::kA, j, i),
                     find(SetKind::kB, j, i + 1)});
    }
    out.push_back({BlockKind::kEntry, find(SetKind::kB, j, 1), find(SetKind::kS, j, 0)});
  }
  for (std::int64_t i = 1; i <= layers; ++i) {
    if (level == 1) {
      out.push_back({BlockKind::kDummyPair, find(SetKind::kD, 1, i),
                     find(SetKind::kD, 2, i)});
    } else {
      out.push_back({BlockKind::kDummyPair, find(SetKind::kD, 1, i),
                     find(SetKind::kD, 4, i)});
      out.push_back({BlockKind::kDummyPair, find(SetKind::kD, 2, i),
                     find(SetKind::kD, 3, i)});
    }
  }
  out.push_back({BlockKind::kTop, find(SetKind::kA, 1, layers),
                 find(SetKind::kA, 2, layers)});
  return out;
}

CoverWitness vertex_cover_witness(const Instance& instance) {
  if (instance.instance_case != Case::kNo) {
    throw Error(Errc::kInvalidParam,
                "the blocking witness exists only for NO instances");
  }
  CoverWitness w;
  w.in_cover.assign(static_cast<std::size_t>(instance.n), 0);
  std::vector<std::int32_t> stack = {0};
  while (!stack.empty()) {
    const std::int32_t node_idx = stack.back();
    stack.pop_back();
    const Node& node = instance.nodes[static_cast<std::size_t>(node_idx)];
    for (std::int32_t s : node.sets) {
      const VertexSet& vs = instance.sets[static_cast<std::size_t>(s)];
      if (vs.kind == SetKind::kB || vs.kind == SetKind::kD) {
        for (std::int32_t v : vs.vertices) {
          w.in_cover[static_cast<std::size_t>(v)] = 1;
        }
      }
    }
    for (const NodeChild& child : node.children) {
      if (child.block == BlockKind::kTop) {
        stack.push_back(child.node);
      }
    }
  }
  for (std::int32_t v = 0; v < instance.n; ++v) {
    if (w.in_cover[static_cast<std::size_t>(v)]) {
      w.cover.push_back(v);
    }
  }
  return w;
}

}  // namespace matchgap
