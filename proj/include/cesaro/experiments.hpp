#pragma once

#include "cesaro/series.hpp"
#include "cesaro/table.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cesaro {

inline constexpr std::string_view kLibraryVersion = "1.0.0";

enum class Subcommand { identities, boundedness, divergence, convergence, seminorm };

std::string_view to_string(Subcommand sub);
/// Throws ConfigError for an unknown name.
Subcommand parse_subcommand(std::string_view name);

struct ExperimentConfig {
    Subcommand subcommand = Subcommand::identities;
    std::vector<int> m_list;
    std::vector<double> alpha_list;
    std::vector<std::int64_t> n_grid;
    std::string measure_spec;
    std::string function_spec;
    double tol = 1e-9;
    std::optional<std::filesystem::path> out_csv;     // stdout when absent
    std::optional<std::filesystem::path> out_svg;
    std::optional<std::filesystem::path> matrix_csv;  // matrix of the first sweep point
    std::uint64_t seed = 42;
    bool timestamp = true;
    double z0 = 0.5;
};

/// Per-subcommand defaults.
ExperimentConfig default_config(Subcommand sub);

/// Throws ConfigError on any violated invariant.
void validate(const ExperimentConfig& cfg);

/// Powers of two in [n_min, n_max], with n_max appended when it is not itself a power of two.
std::vector<std::int64_t> power_of_two_grid(std::int64_t n_min, std::int64_t n_max);

/// Test-function grammar:
///   power:s=<s>,N=<N>   a_k = (k+1)^{-s}, k = 0..N
///   monomial:k=<k>      z^k
///   poly:<json>         [[re,im],...] or [a0,a1,...]
///   file:<path>         JSON as for poly:
///   random:N=<N>        uniform complex coefficients in [-1,1]^2 from the given seed
/// Throws ConfigError.
PowerSeries parse_function(std::string_view spec, std::uint64_t seed);

struct ExperimentResult {
    ExperimentTable table;
    std::vector<std::string> failures;  // failed assertions, one line each
    bool nonconverged = false;

    /// 0 pass, 1 assertion failure, 3 non-convergence.
    int exit_code() const;
};

ExperimentResult run_identities(const ExperimentConfig& cfg);
ExperimentResult run_boundedness(const ExperimentConfig& cfg);
ExperimentResult run_divergence(const ExperimentConfig& cfg);
ExperimentResult run_convergence(const ExperimentConfig& cfg);
ExperimentResult run_seminorm(const ExperimentConfig& cfg);

/// Dispatches on cfg.subcommand after validation, then writes the CSV/SVG/matrix outputs
/// named in cfg (the CSV only when out_csv is set).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Plot layout used for a subcommand's SVG; nullopt when the table has no n axis.
std::optional<PlotSpec> default_plot(Subcommand sub);

/// One-line summaries of the numerical thresholds, echoed into metadata and CLI help.
std::vector<std::string> threshold_notes(Subcommand sub);

} // namespace cesaro
