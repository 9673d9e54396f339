#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "liebundle/algebra.hpp"

namespace liebundle {

enum class IsoKind { DeltaMap, Conjugation, A1Zero, Composed };

/// A deformed space together with the matrix defining its bracket.
struct BundleSpace {
  ParamsPtr params;
  SymElement bracket_matrix;
};

/// Linear Lie-algebra map between bundle spaces, certified numerically:
/// the coordinate matrix must be far from singular and the homomorphism
/// identity must hold on random pairs.
struct IsoMap {
  IsoKind kind;
  BundleSpace source;
  BundleSpace target;
  std::function<Matrix(const Matrix&)> forward;

  /// Action on skew coordinates, dim n(n-1)/2.
  Matrix coordinate_matrix() const;

  /// sigma_min / sigma_max of the coordinate matrix.
  double invertibility_ratio() const;

  /// Worst relative gap between forward([X,Y]_src) and
  /// [forward X, forward Y]_tgt over random pairs.
  double homomorphism_residual(Rng& rng, int trials) const;

  /// Worst membership residual of forward images in the target space.
  double image_membership_residual(Rng& rng, int trials) const;
};

/// X -> delta X, onto plain skew matrices with bracket matrix S delta^-1.
/// Requires every parameter nonzero.
IsoMap iso_delta(const ParamsPtr& params, const SymElement& s);

/// X -> C delta X C^T delta from bracket C^T delta S C delta to bracket S.
/// With zero parameters delta is replaced by the sum of the delta_{k_i} and
/// C must be block-diagonal against the projector family.
IsoMap iso_conjugation(const ParamsPtr& params, const SymElement& s, const Matrix& c);

/// X -> (delta_1 X - X^T delta_1) / 2 for a_1 = 0, all other parameters
/// nonzero; lands in plain skew matrices with bracket matrix S iota(delta_1).
IsoMap iso_a1_zero(const ParamsPtr& params, const SymElement& s);

struct Signature {
  int p = 0;
  int q = 0;
};

class DegenerateClassificationError : public std::runtime_error {
 public:
  explicit DegenerateClassificationError(const std::string& what) : std::runtime_error(what) {}
};

/// Inertia of the symmetric matrix S delta^-1. Throws
/// DegenerateClassificationError when an eigenvalue sits below
/// degeneracy_tol relative to the largest.
Signature classify_signature(const ParamsPtr& params, const SymElement& s, double degeneracy_tol = 1e-10);

/// Canonical name, larger index first: so(4), so(3,1), so(2,2).
std::string so_name(const Signature& sig);

/// Explicit composed chain (conjugation then delta map) landing in the
/// bracket matrix diag(+-1) of the signature; verified end-to-end by the
/// IsoMap checks rather than asserted from inertia alone.
IsoMap so_pq_certificate(const ParamsPtr& params, const SymElement& s);

/// Block decomposition at a zero parameter a_k = 0: the two diagonal blocks
/// live in the prefix and suffix spaces, the lower-left block is free.
struct SemidirectBlocks {
  SkewElement a_block;
  SkewElement c_block;
  Matrix b_block;  // (n-k) x k
};

SemidirectBlocks semidirect_split(const SkewElement& x, int k);
SkewElement semidirect_join(const ParamsPtr& params, int k, const SemidirectBlocks& blocks);

/// Commutator bracket of triples:
/// ([A,A'], [C,C'], B A' + C B' - B' A - C' B).
SemidirectBlocks semidirect_triple_bracket(const SemidirectBlocks& l, const SemidirectBlocks& r);

}  // namespace liebundle
