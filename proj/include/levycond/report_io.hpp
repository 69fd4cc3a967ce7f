#pragma once

#include <span>
#include <string>

#include "levycond/experiments.hpp"

namespace levycond {

/// Fixed CSV schema, one row per cell:
///   experiment,alpha,rho,x,t,dt,n,estimate,std_error,verdict
/// Doubles are printed with %.17g so reruns with the same seed and chunk
/// count are byte-identical.
std::string to_csv(std::span<const ExperimentReport> reports);

/// Machine-readable summary: master seed, chunk count, per-experiment verdicts.
std::string to_summary_json(std::span<const ExperimentReport> reports);

/// Human-readable run log.
std::string to_log_text(std::span<const ExperimentReport> reports);

/// Writes content to path, creating parent directories. Throws on I/O failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace levycond
