#pragma once

// Report files. Every table is comma-separated with one header line, '.' as
// the decimal separator and shortest round-trip formatting for reals.
//
//   summary.csv      group,mode,statistic,value
//   attempts.csv     qrc_echo:  wave_kind,mode,attempt,loss,train_loss
//                    fit_*:     model,mode,attempt,test_metric,train_loss,clamp_events
//   traces.csv       attempt,generation,best_fitness,mean_fitness,generation_best
//   test_points.csv  qrc_echo:  wave_kind,mode,step,target,average_prediction,
//                               minimum_prediction,maximum_prediction,
//                               average_distance,median_distance
//                    fit_*:     point,average_distance,median_distance
//   predictions.csv  attempt,point,u0,u1,u2,u3,prediction,target,absolute_distance  (fit_* only)
//   parameters/attempt_<n>.txt   "<name> <value>" per line  (fit_* only)
//   config.json      resolved configuration
//   run_info.txt     wall-clock time (the only non-deterministic output)

#include "qtcc/harness.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qtcc {

/// Shortest decimal representation that parses back to the same double.
std::string format_real(double value);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Writes every report file into `directory` (created if missing). Returns
/// the paths written.
std::vector<std::filesystem::path> emit_report(const RunReport& report, const std::filesystem::path& directory);

std::string summary_csv(const std::vector<SummaryRow>& rows);

/// Reads attempts.csv back into records (group, mode, attempt, metric,
/// train_loss, clamp_events).
std::vector<AttemptRecord> read_attempts(const std::filesystem::path& attempts_csv);

/// Recomputes summary.csv from attempts.csv and config.json in `directory`.
std::vector<SummaryRow> reaggregate(const std::filesystem::path& directory);

}  // namespace qtcc
