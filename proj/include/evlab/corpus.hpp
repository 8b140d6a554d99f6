#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "evlab/evidence_model.hpp"

namespace evlab {

/// Exact precision level μ ∈ (0,1), parsed from a decimal literal like
/// "0.3". Kept as a rational so interval endpoints never round.
struct Mu {
  long long num = 0;
  long long den = 1;
  std::string label;  // normalized literal, used inside world ids
};

Mu parse_mu(const std::string& text);
const std::vector<Mu>& default_mu_grid();  // 0.1, 0.2, …, 0.9

/// Williamson's clock, discretized: one world per grid point on the
/// minute circle [0,60) at `resolution` points (≥ 60, divisible by 60).
/// Looking at the clock from a distance leaves an open interval of
/// candidate positions: I_e(c) = grid points strictly inside
/// (c/2, (c+30)/2) when c ∈ (0,30), and ∅ otherwise. Atoms pos_0 …
/// pos_59 pick out the integer-minute worlds; integer minutes are named
/// "0" … "59" and finer grid points "g<index>".
EvidenceModel clock_example1(std::size_t resolution = 60);

/// The clock with an unknown margin of error: worlds are pairs (c, μ) of
/// a position and a precision level, named "c@μ". Evidence narrows the
/// position to the open interval ((1-μ)c, (1-μ)c + 30μ) but says nothing
/// about μ itself, so every interpretation carries the full μ-grid in
/// its second factor. The grid must contain 0.3 and 0.4 — the witness
/// pair the E-but-not-EE chain runs through.
EvidenceModel clock_example2(std::size_t resolution = 60,
                             const std::vector<Mu>& mu_grid =
                                 default_mu_grid());

/// Hand-built models used across the tests and docs, as loadable model
/// documents with stable names:
///   two-world     the smallest model with a non-trivial evidence split
///   chain3        three-world chain witnessing E p without E E p
///   ssm-collapse  subset-space derived model where K and E agree
///   const-gen     two constant generators; □ strictly weaker than K
///   upset2        two-world knowability model (R_□ chain, R_E identity)
const std::vector<std::string>& gallery();
nlohmann::json gallery_doc(const std::string& name);

}  // namespace evlab
