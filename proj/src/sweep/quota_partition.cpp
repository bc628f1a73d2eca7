#include "apportion/sweep.hpp"

namespace apportion {

namespace {

Rat piece_value(const Instance& inst, const LevelPiece& piece, const Rat& delta) {
  return (Rat(static_cast<long>(piece.line.offset)) + delta) / Rat(static_cast<long>(inst.population(piece.line.state)));
}

// delta on the piece at which its line reaches `level`
Rat piece_inverse(const Instance& inst, const LevelPiece& piece, const Rat& level) {
  return level * Rat(static_cast<long>(inst.population(piece.line.state))) - Rat(static_cast<long>(piece.line.offset));
}

}  // namespace

QuotaPartition quota_partition(const Instance& inst) {
  const auto q = quotas(inst);
  Rat lambda1(0), lambda2;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Rat p(static_cast<long>(inst.population(i)));
    Rat lo = Rat(q[i].floor()) / p, hi = Rat(q[i].ceil()) / p;
    if (i == 0 || lo > lambda1) lambda1 = lo;
    if (i == 0 || hi < lambda2) lambda2 = hi;
  }

  const auto pieces = sweep_level(inst).pieces;
  QuotaPartition part{Rat(1), Rat(0)};

  // lambda_H is continuous and increasing, so both inverses are single crossings.
  if (piece_value(inst, pieces.front(), pieces.front().lo) >= lambda1) {
    part.tau_low = Rat(0);
  } else {
    for (const auto& piece : pieces) {
      if (piece_value(inst, piece, piece.hi) >= lambda1) {
        part.tau_low = max(piece.lo, piece_inverse(inst, piece, lambda1));
        break;
      }
    }
  }

  if (piece_value(inst, pieces.back(), pieces.back().hi) <= lambda2) {
    part.tau_high = Rat(1);
  } else {
    for (const auto& piece : pieces) {
      if (piece_value(inst, piece, piece.hi) > lambda2) {
        part.tau_high = max(piece.lo, piece_inverse(inst, piece, lambda2));
        break;
      }
    }
  }
  return part;
}

}  // namespace apportion
