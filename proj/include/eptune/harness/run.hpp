#pragma once

#include <filesystem>
#include <system_error>

#include "eptune/harness/csv.hpp"
#include "eptune/harness/experiment.hpp"
#include "eptune/harness/report.hpp"

namespace eptune::harness {

inline constexpr const char* kGenerationsFile = "generations.csv";
inline constexpr const char* kTrainTraceFile = "best_train_trace.csv";
inline constexpr const char* kTestTraceFile = "best_test_trace.csv";
inline constexpr const char* kResultFile = "result.json";

/// Runs the experiment and writes generations.csv, best_train_trace.csv,
/// best_test_trace.csv and result.json into spec.output_directory.
inline ResultRecord run_experiment(const ExperimentSpec& spec) {
  const auto& dir = spec.output_directory;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const ExperimentOutcome out = execute_experiment(spec);
  export_generations(out.ep.history, dir / kGenerationsFile);
  write_text_file(dir / kTrainTraceFile, trace_csv(out.train_trace));
  write_text_file(dir / kTestTraceFile, trace_csv(out.test_trace));
  write_text_file(dir / kResultFile, result_json(out.result, spec).dump(2) + "\n");
  return out.result;
}

}  // namespace eptune::harness
