#pragma once

#include <array>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "eptune/ep.hpp"
#include "eptune/errors.hpp"
#include "eptune/plant.hpp"

namespace eptune::harness {

/// Shortest decimal text that parses back to the same double.
inline std::string format_real(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw IoError("cannot format real number");
  return {buf.data(), end};
}

inline double parse_real(std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ContractViolation("not a real number: '" + std::string(text) + "'");
  return v;
}

inline std::size_t parse_index(std::string_view text) {
  std::size_t v = 0;
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (ec != std::errc{} || ptr != last)
    throw ContractViolation("not a nonnegative integer: '" + std::string(text) + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

inline constexpr std::string_view kGenerationsHeader =
    "generation,member,kpv,kiv,kdv,kpa,kia,kda,ae_linear,ae_angular";

inline constexpr std::string_view kTraceHeader =
    "t,desired_linear,actual_linear,desired_angular,actual_angular";

/// One row per (generation, member), written in generation order.
inline std::string generations_csv(const std::vector<GenerationRecord>& history) {
  if (history.empty()) throw ContractViolation("no generations to export");
  std::string out(kGenerationsHeader);
  out += '\n';
  for (const GenerationRecord& g : history) {
    for (std::size_t m = 0; m < g.members.size(); ++m) {
      const MemberResult& r = g.members[m];
      out += std::to_string(g.generation_index);
      out += ',';
      out += std::to_string(m);
      for (double v : r.individual.to_array()) {
        out += ',';
        out += format_real(v);
      }
      out += ',';
      out += format_real(r.fitness.ae_linear);
      out += ',';
      out += format_real(r.fitness.ae_angular);
      out += '\n';
    }
  }
  return out;
}

inline std::vector<GenerationRecord> parse_generations_csv(std::string_view text) {
  std::vector<GenerationRecord> history;
  std::vector<MemberResult> pending;
  std::size_t pending_gen = 0;
  const auto flush = [&] {
    if (!pending.empty()) history.push_back(GenerationRecord::make(pending_gen, std::move(pending)));
    pending.clear();
  };

  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kGenerationsHeader) throw ContractViolation("unexpected generations header");
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 10)
      throw ContractViolation("line " + std::to_string(line_no) + ": expected 10 columns");
    const std::size_t gen = parse_index(cells[0]);
    const std::size_t member = parse_index(cells[1]);
    if (!pending.empty() && gen != pending_gen) flush();
    if (pending.empty()) pending_gen = gen;
    if (member != pending.size())
      throw ContractViolation("line " + std::to_string(line_no) + ": member out of order");
    std::array<double, 6> gains{};
    for (std::size_t i = 0; i < 6; ++i) gains[i] = parse_real(cells[2 + i]);
    pending.push_back(
        {Individual::from_array(gains), {parse_real(cells[8]), parse_real(cells[9])}});
  }
  flush();
  return history;
}

inline std::string trace_csv(const SimTrace& trace) {
  if (trace.linear.size() != trace.angular.size())
    throw ContractViolation("channel traces differ in length");
  std::string out(kTraceHeader);
  out += '\n';
  for (std::size_t k = 0; k < trace.linear.size(); ++k) {
    const TraceSample& l = trace.linear[k];
    const TraceSample& a = trace.angular[k];
    const std::array<double, 5> row{l.t, l.desired, l.actual, a.desired, a.actual};
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_real(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw IoError("write failed: " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

inline void export_generations(const std::vector<GenerationRecord>& history,
                               const std::filesystem::path& path) {
  write_text_file(path, generations_csv(history));
}

inline std::vector<GenerationRecord> import_generations(const std::filesystem::path& path) {
  return parse_generations_csv(read_text_file(path));
}

}  // namespace eptune::harness
