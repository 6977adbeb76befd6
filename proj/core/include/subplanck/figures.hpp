#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "subplanck/io.hpp"
#include "subplanck/loci.hpp"
#include "subplanck/phase_space.hpp"

namespace subplanck {

enum class Figure { fig1, fig2, fig3, fig4 };

std::string_view to_string(Figure f) noexcept;
std::optional<Figure> figure_from_string(std::string_view name) noexcept;

/// Fringe-area table: one row per state.
struct FringeFigureConfig {
  std::vector<StateSpec> states;
  FringeOptions fringe;
  double tail_tolerance = kDefaultTailTolerance;

  /// Cat beta = 2 and KS(+) beta = 1.5 with n_add in {0, 1, 2}, and cat
  /// beta in {1.5, 2.5} without photon addition.
  static FringeFigureConfig defaults();
};

struct FigureOutput {
  std::filesystem::path csv;
  std::filesystem::path manifest;
  int rows = 0;
  int omitted = 0;
  int flagged = 0;
};

/// Header of the locus CSV used by fig2, fig3 and fig4.
std::string_view locus_csv_header() noexcept;
std::string locus_csv(const std::vector<LocusPoint>& points);

/// fig2 accepts the target-target pairs, fig3 and fig4 the proposed-target
/// pairs. Writes <out>/<fig>.csv and <out>/<fig>.json; the manifest echoes
/// `effective_config` and its hash.
FigureOutput emit_figure_dataset(const LocusConfig& cfg, Figure which,
                                 const std::filesystem::path& out_dir,
                                 const Json& effective_config);

FigureOutput emit_fringe_figure(const FringeFigureConfig& cfg,
                                const std::filesystem::path& out_dir,
                                const Json& effective_config);

}  // namespace subplanck
