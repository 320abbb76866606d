#include "simclean/csv_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace simclean {

namespace {

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(trimmed(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
}

std::int64_t parse_int(const std::string& text, std::size_t line_no, const char* what) {
  try {
    std::size_t used = 0;
    const long long value = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    fail_line(line_no, std::string("cannot parse ") + what + " '" + text + "'");
  }
}

double parse_double(const std::string& text, std::size_t line_no, const char* what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    fail_line(line_no, std::string("cannot parse ") + what + " '" + text + "'");
  }
}

/// Reads non-empty lines with their 1-based numbers; validates the header.
std::vector<std::pair<std::size_t, std::vector<std::string>>> read_rows(
    std::istream& in, const std::string& expected_header) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trimmed(line);
    if (content.empty()) continue;
    if (!header_seen) {
      if (content != expected_header) {
        fail_line(line_no, "expected header '" + expected_header + "', got '" + content + "'");
      }
      header_seen = true;
      continue;
    }
    rows.emplace_back(line_no, split_fields(content));
  }
  if (!header_seen) {
    throw std::invalid_argument("line 1: missing header '" + expected_header + "'");
  }
  return rows;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string format_optional(const std::optional<double>& value) {
  return value.has_value() ? format_number(*value) : "undefined";
}

PairPredictionSet read_predictions_csv(std::istream& in,
                                       std::optional<std::int64_t> channels) {
  const auto rows = read_rows(in, "a,b,prediction");
  std::vector<std::tuple<std::int32_t, std::int32_t, PairTag>> entries;
  entries.reserve(rows.size());
  std::int64_t max_index = -1;
  for (const auto& [line_no, fields] : rows) {
    if (fields.size() != 3) fail_line(line_no, "expected 3 fields a,b,prediction");
    const std::int64_t a = parse_int(fields[0], line_no, "channel index");
    const std::int64_t b = parse_int(fields[1], line_no, "channel index");
    if (a < 0 || b < 0 || a >= b) {
      fail_line(line_no, "pair (" + fields[0] + "," + fields[1] + ") must satisfy 0 <= a < b");
    }
    PairTag tag;
    if (fields[2] == "similar") {
      tag = PairTag::Similar;
    } else if (fields[2] == "dissimilar") {
      tag = PairTag::Dissimilar;
    } else {
      fail_line(line_no, "prediction must be 'similar' or 'dissimilar', got '" + fields[2] + "'");
    }
    max_index = std::max(max_index, b);
    entries.emplace_back(static_cast<std::int32_t>(a), static_cast<std::int32_t>(b), tag);
  }
  if (entries.empty()) {
    throw std::invalid_argument("predictions file contains no data rows");
  }
  const std::int64_t inferred = channels.value_or(max_index + 1);
  return PairPredictionSet::from_entries(inferred, entries);
}

ChannelLabeling read_truth_csv(std::istream& in) {
  const auto rows = read_rows(in, "channel,label");
  std::vector<std::optional<ChannelLabel>> slots;
  for (const auto& [line_no, fields] : rows) {
    if (fields.size() != 2) fail_line(line_no, "expected 2 fields channel,label");
    const std::int64_t channel = parse_int(fields[0], line_no, "channel index");
    if (channel < 0) fail_line(line_no, "channel index must be nonnegative");
    ChannelLabel label;
    if (fields[1] == "correct") {
      label = ChannelLabel::Correct;
    } else if (fields[1] == "incorrect") {
      label = ChannelLabel::Incorrect;
    } else {
      fail_line(line_no, "label must be 'correct' or 'incorrect', got '" + fields[1] + "'");
    }
    if (static_cast<std::size_t>(channel) >= slots.size()) {
      slots.resize(static_cast<std::size_t>(channel) + 1);
    }
    if (slots[static_cast<std::size_t>(channel)].has_value()) {
      fail_line(line_no, "duplicate channel " + fields[0]);
    }
    slots[static_cast<std::size_t>(channel)] = label;
  }
  ChannelLabeling labeling;
  labeling.labels.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].has_value()) {
      throw std::invalid_argument("truth file is missing channel " + std::to_string(i));
    }
    labeling.labels.push_back(*slots[i]);
  }
  if (labeling.labels.empty()) {
    throw std::invalid_argument("truth file contains no data rows");
  }
  return labeling;
}

std::vector<Candidate> read_candidates_csv(std::istream& in) {
  const auto rows = read_rows(in, "id,q2,q3");
  std::vector<Candidate> candidates;
  candidates.reserve(rows.size());
  for (const auto& [line_no, fields] : rows) {
    if (fields.size() != 3) fail_line(line_no, "expected 3 fields id,q2,q3");
    if (fields[0].empty()) fail_line(line_no, "candidate id must be nonempty");
    const double q2 = parse_double(fields[1], line_no, "q2");
    const double q3 = parse_double(fields[2], line_no, "q3");
    if (std::isnan(q2) || q2 < 0.0 || q2 > 1.0) fail_line(line_no, "q2 must lie in [0,1]");
    if (std::isnan(q3) || q3 < 0.0 || q3 > 1.0) fail_line(line_no, "q3 must lie in [0,1]");
    candidates.push_back(Candidate{fields[0], OperatingPoint{q2, q3}});
  }
  return candidates;
}

void write_verdicts_csv(std::ostream& out, const ChannelVerdicts& verdicts) {
  out << "channel,verdict\n";
  for (std::int64_t i = 0; i < verdicts.channels(); ++i) {
    out << i << ','
        << (verdicts.verdicts[static_cast<std::size_t>(i)] == Verdict::Correct ? "correct"
                                                                               : "incorrect")
        << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "q2,q3,e1,e2,e3,e4\n";
  for (const SweepRow& row : rows) {
    out << format_number(row.q2) << ',' << format_number(row.q3) << ','
        << format_optional(row.measures.e1) << ',' << format_optional(row.measures.e2) << ','
        << format_optional(row.measures.e3) << ',' << format_optional(row.measures.e4) << '\n';
  }
}

void write_correlation_csv(std::ostream& out, const CorrelationReport& report) {
  out << "measure,spearman_rho_q3,strong_positive\n";
  for (const Measure measure : {Measure::E1, Measure::E2, Measure::E3, Measure::E4}) {
    const MeasureCorrelation& row = report.get(measure);
    out << to_string(measure) << ',' << format_optional(row.rho) << ','
        << (row.strong_positive ? "true" : "false") << '\n';
  }
}

void write_ranking_csv(std::ostream& out, const RankedResult& result) {
  out << "rank,id," << to_string(result.measure) << ",q2,q3\n";
  std::size_t rank = 1;
  for (const RankedEntry& entry : result.ranking) {
    out << rank++ << ',' << entry.id << ',' << format_optional(entry.value) << ','
        << format_optional(entry.op.q2) << ',' << format_optional(entry.op.q3) << '\n';
  }
}

std::vector<double> parse_grid(const std::string& text) {
  const auto number = [&text](const std::string& part, const char* what) {
    try {
      std::size_t used = 0;
      const double value = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument("");
      return value;
    } catch (const std::exception&) {
      throw std::invalid_argument("grid spec '" + text + "': cannot parse " + what);
    }
  };
  const auto first = text.find(':');
  if (first == std::string::npos) {
    return {number(trimmed(text), "value")};
  }
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw std::invalid_argument("grid spec '" + text + "' must be <value> or start:stop:step");
  }
  const double start = number(trimmed(text.substr(0, first)), "start");
  const double stop = number(trimmed(text.substr(first + 1, second - first - 1)), "stop");
  const double step = number(trimmed(text.substr(second + 1)), "step");
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (stop < start) throw std::invalid_argument("grid stop must be >= start");
  std::vector<double> values;
  for (std::int64_t i = 0;; ++i) {
    const double value = start + static_cast<double>(i) * step;
    if (value > stop + step * 1e-9) break;  // absorb accumulated rounding at the endpoint
    values.push_back(std::min(value, stop));
  }
  return values;
}

}  // namespace simclean
