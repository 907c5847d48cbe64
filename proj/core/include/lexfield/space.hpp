#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexfield/numeric.hpp"

namespace lexfield {

// The latent semantic space R^n. Words live at positions in it; every
// other type in the library is checked against its dimension.
struct SemanticSpace {
  int dim = 1;
};

void validate_space(const SemanticSpace& s);

enum class KernelKind { gaussian, exponential, inverse_power };

// Radial profile G(r; sigma), normalized so G(0) = 1 and non-increasing
// in r. `power` applies to inverse_power only: G = (1 + (r/sigma)^2)^(-p/2).
struct KernelSpec {
  KernelKind kind = KernelKind::gaussian;
  double power = 2.0;
};

double kernel_eval(const KernelSpec& k, double r, double sigma);

const char* kernel_kind_name(KernelKind kind);
KernelKind kernel_kind_from_name(const std::string& name);

struct Word {
  std::string id;
  Vec position;             // q_w
  double strength = 1.0;    // S_w
  double width = 1.0;       // sigma_w
  double stability = 1.0;   // gamma_w in [0,1]; stored, consumed by no default computation
};

struct Phrase {
  std::vector<Word> words;  // ordered, non-empty
};

// How the three pair distances of a word triple reduce to one radius
// before the triple kernel applies. sum_of_squares keeps the kernel
// invariant under any permutation of the triple.
enum class TripleReduction { sum_of_squares };

struct FieldConfig {
  KernelSpec unary_kernel{};                 // G
  double kappa2 = 1.0;                       // pair coupling
  double kappa3 = 0.1;                       // triple coupling
  KernelSpec pair_kernel{};                  // K2 profile
  double pair_sigma = 1.0;
  KernelSpec triple_kernel{};                // K3 profile
  double triple_sigma = 1.0;
  TripleReduction triple_reduction = TripleReduction::sum_of_squares;
};

// K2(d) and K3(d_ij, d_jk, d_ik) as configured.
double pair_kernel_value(const FieldConfig& cfg, double d);
double triple_kernel_value(const FieldConfig& cfg, double d1, double d2, double d3);

enum class QuadratureMethod { grid, monte_carlo };

// Axis-aligned box with either a per-axis grid resolution or a Monte
// Carlo sample budget attached.
struct Region {
  Vec lower;
  Vec upper;
  QuadratureMethod method = QuadratureMethod::grid;
  int grid_points_per_axis = 64;
  std::int64_t mc_samples = 10000;

  static Region grid(Vec lo, Vec hi, int points_per_axis);
  static Region monte_carlo(Vec lo, Vec hi, std::int64_t samples);

  std::size_t dim() const { return lower.size(); }
  double volume() const;
};

void validate_word(const Word& w);
void validate_phrase(const Phrase& p);
void validate_config(const FieldConfig& cfg);
void validate_region(const Region& r);

// Dimension shared by all words of the phrase.
std::size_t phrase_dim(const Phrase& p);

}  // namespace lexfield
