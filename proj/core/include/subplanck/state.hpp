#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "subplanck/fock.hpp"

namespace subplanck {

enum class Family { coherent, cat, ks_plus, ks_minus, sq, ss, ssd };

std::string_view to_string(Family family) noexcept;
std::optional<Family> family_from_string(std::string_view name) noexcept;

/// Declarative description of one state.
///
///   coherent  |alpha>
///   cat(l)    sum_{k=0}^{1} e^{i k l pi} |e^{i k pi} beta>
///   ks_+(l)   sum_{k=0}^{3} fbar(k,0) e^{-i l k pi/2} |e^{i k pi/2} beta>
///   ks_-(l)   sum_{k=0}^{3} fbar(k,1) e^{-i l k pi/2} |e^{i k pi/2} beta>
///   sq        S[r e^{i phi}] |0>
///   ss        (S[r e^{i phi}] + S[-r e^{i phi}]) |0>
///   ssd       S[r e^{i phi}] (D[alpha] + D[-alpha]) |0>
///
/// followed by a^dag^{n_add} or a^{n_sub} and normalization.
struct StateSpec {
  Family family = Family::coherent;
  Complex alpha{};
  Complex beta{};
  double r = 0.0;
  double phi = 0.0;
  int l = 0;
  int n_add = 0;
  int n_sub = 0;

  static StateSpec coherent(Complex alpha);
  static StateSpec cat(Complex beta, int l);
  static StateSpec ks_plus(Complex beta, int l);
  static StateSpec ks_minus(Complex beta, int l);
  static StateSpec squeezed(double r, double phi = 0.0);
  static StateSpec ss(double r, double phi = 0.0);
  static StateSpec ssd(double r, Complex alpha, double phi = 0.0);

  StateSpec with_added(int n) const;
  StateSpec with_subtracted(int n) const;

  /// Throws ErrorKind::validation on range violations.
  void validate() const;

  bool operator==(const StateSpec&) const = default;
};

/// Number of orthogonal basis labels l for a family (cat/ks_-: 2, ks_+: 4).
int basis_size(Family family);

/// Coefficients fbar_{k1,k0} of the compass superpositions.
struct FbarTable {
  static constexpr std::array<std::array<double, 2>, 4> values{{
      {1.0, 1.0},
      {1.0, 1.0},
      {1.0, -1.0},
      {1.0, -1.0},
  }};

  static double at(int k1, int k0);
};

/// 2^{k0/2} [sin((2 k1 + 1) pi / 4)]^{k0}.
double fbar_closed_form(int k1, int k0);

/// Branches of the superposition before photon addition: psi0 = sum_k w_k |branch_k>.
struct Branch {
  Complex weight;
  Complex displacement;  // coherent amplitude of the branch (before squeezing)
  double squeeze_r;      // S[squeeze_r e^{i phi}] applied after the displacement
};
std::vector<Branch> branches(const StateSpec& spec);

/// The equal-weight superposition with no PA/PS applied and no normalization.
FockVector build_superposition(const StateSpec& spec, int cutoff);

/// Full construction: superposition, then a^dag^{n_add} or a^{n_sub}, then normalize.
FockVector build_state(const StateSpec& spec, int cutoff);

/// Smallest ladder cutoff whose constructed state has tail mass below eps.
int auto_cutoff(const StateSpec& spec, double eps = kDefaultTailTolerance);

/// build_state at the automatic cutoff. When min_cutoff exceeds the automatic
/// one the larger value is used.
FockVector make_state(const StateSpec& spec, double eps = kDefaultTailTolerance,
                      int min_cutoff = 0);

/// <Pi> = sum_n (-1)^n |c_n|^2. Refuses flagged input.
double parity_expectation(const FockVector& psi, double tail_tolerance = kDefaultTailTolerance);

// ------------------------------------------------------------------ pairings

enum class PairLabel { prstrg1, prstrg2, prstrg3, trgtrgn1, trgtrgp2, trgtrgE3 };

std::string_view to_string(PairLabel label) noexcept;
std::optional<PairLabel> pair_from_string(std::string_view name) noexcept;

/// A proposed/target comparison. source_l is the basis label of the state that
/// photons are added to in the target-target pairs (ignored for prstrg).
struct PairSpec {
  PairLabel label = PairLabel::prstrg1;
  int n = 0;
  int source_l = 0;

  /// Parity-matched l of the target state.
  int target_l() const;
};

/// Free parameters of one comparison. alpha is the magnitude of the SSD
/// displacement (prstrg-1) or of the photon-added source amplitude
/// (target-target pairs). Amplitudes of compass and cat states carry beta_phase.
struct PairParams {
  double r = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  Complex beta_phase{1.0, 0.0};
};

/// Unit phase used for the cat/compass amplitudes of a pair by default.
Complex default_beta_phase(PairLabel label);

struct ResolvedPair {
  StateSpec proposed;
  StateSpec target;
};

ResolvedPair resolve_pair(const PairSpec& pair, const PairParams& params);

}  // namespace subplanck
