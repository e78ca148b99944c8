// Copyright 2026 The W2BGP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "w2bgp/error.hpp"
#include "w2bgp/experiment.hpp"

namespace w2bgp {
namespace {

constexpr const char* kReplicateTable = "replicates.csv";
constexpr const char* kGapTable = "gap_curves.csv";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& text, const std::string& where) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw Error(ErrorKind::kParseError, where + ": bad number '" + text + "'");
  }
  return value;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path.string());
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kMissingDefinitionFile, "cannot read " + path.string());
  return in;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

void write_run_csv(std::ostream& out, const ReplicateOutcome& outcome) {
  out << "iteration,agent_or_source";
  for (std::size_t k = 1; k <= outcome.d; ++k) out << ",x" << k;
  out << ",y,best_seen,gap\n";
  const double span = outcome.y0 - outcome.ystar;
  for (const QueryEntry& e : outcome.record.entries) {
    out << e.iteration << ',' << e.source;
    for (double v : e.x) out << ',' << format_number(v);
    double gap = 1.0;
    if (span > 1e-12) gap = std::clamp((outcome.y0 - e.best_seen) / span, 0.0, 1.0);
    out << ',' << format_number(e.y) << ',' << format_number(e.best_seen) << ','
        << format_number(gap) << '\n';
  }
}

ReplicateRow replicate_row(const ReplicateOutcome& outcome) {
  ReplicateRow row;
  row.schema = std::string(schema_name(outcome.schema));
  row.replicate = outcome.replicate;
  row.seed = outcome.seed;
  row.augc = outcome.record.augc;
  row.best_seen = outcome.record.best_seen_curve.empty() ? outcome.y0
                                                         : outcome.record.best_seen_curve.back();
  if (outcome.task == TaskKind::kMfbo) {
    row.ground_truth_usage = usage_fraction(outcome.record).front();
  }
  row.gap = outcome.record.gap;
  return row;
}

void write_replicate_tables(const std::filesystem::path& dir, std::span<const ReplicateRow> rows) {
  const bool with_usage = std::any_of(rows.begin(), rows.end(),
                                      [](const ReplicateRow& r) { return r.ground_truth_usage; });
  std::ofstream table = open_for_write(dir / kReplicateTable);
  table << "schema,replicate,seed,augc,best_seen" << (with_usage ? ",ground_truth_usage" : "")
        << '\n';
  std::ofstream curves = open_for_write(dir / kGapTable);
  curves << "schema,replicate,n,gap\n";
  for (const ReplicateRow& r : rows) {
    table << r.schema << ',' << r.replicate << ',' << r.seed << ',' << format_number(r.augc)
          << ',' << format_number(r.best_seen);
    if (with_usage) table << ',' << format_number(r.ground_truth_usage.value_or(100.0));
    table << '\n';
    for (std::size_t n = 0; n < r.gap.size(); ++n) {
      curves << r.schema << ',' << r.replicate << ',' << n + 1 << ',' << format_number(r.gap[n])
             << '\n';
    }
  }
}

std::vector<ReplicateRow> read_replicate_tables(const std::filesystem::path& dir) {
  std::vector<ReplicateRow> rows;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  {
    std::ifstream in = open_for_read(dir / kReplicateTable);
    std::string line;
    std::getline(in, line);
    const std::vector<std::string> header = split_csv(line);
    const bool with_usage = header.size() == 6;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const std::string where = std::string(kReplicateTable) + ":" + std::to_string(line_no);
      const std::vector<std::string> f = split_csv(line);
      if (f.size() != header.size()) throw Error(ErrorKind::kParseError, where + ": field count");
      ReplicateRow row;
      row.schema = f[0];
      row.replicate = static_cast<std::size_t>(parse_double(f[1], where));
      row.seed = std::stoull(f[2]);
      row.augc = parse_double(f[3], where);
      row.best_seen = parse_double(f[4], where);
      if (with_usage) row.ground_truth_usage = parse_double(f[5], where);
      index[{row.schema, row.replicate}] = rows.size();
      rows.push_back(std::move(row));
    }
  }
  std::ifstream in(dir / kGapTable, std::ios::binary);
  if (!in) return rows;
  std::string line;
  std::getline(in, line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = std::string(kGapTable) + ":" + std::to_string(line_no);
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 4) throw Error(ErrorKind::kParseError, where + ": field count");
    const auto it = index.find({f[0], static_cast<std::size_t>(parse_double(f[1], where))});
    if (it == index.end()) throw Error(ErrorKind::kParseError, where + ": unknown replicate");
    rows[it->second].gap.push_back(parse_double(f[3], where));
  }
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::kInvalidArgument, "median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double sample_std(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::vector<SchemaSummary> summarize(std::span<const ReplicateRow> rows) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const ReplicateRow*>> groups;
  for (const ReplicateRow& r : rows) {
    if (groups.find(r.schema) == groups.end()) order.push_back(r.schema);
    groups[r.schema].push_back(&r);
  }
  auto column = [&](const std::string& schema, auto member) {
    std::vector<double> out;
    for (const ReplicateRow* r : groups[schema]) out.push_back(member(*r));
    return out;
  };
  const auto augc_of = [](const ReplicateRow& r) { return r.augc; };
  const auto best_of = [](const ReplicateRow& r) { return r.best_seen; };

  std::vector<SchemaSummary> out;
  for (const std::string& schema : order) {
    SchemaSummary s;
    s.schema = schema;
    const std::vector<double> augc = column(schema, augc_of);
    const std::vector<double> best = column(schema, best_of);
    s.replicates = augc.size();
    s.augc_median = median(augc);
    s.augc_std = sample_std(augc);
    s.best_median = median(best);
    s.best_std = sample_std(best);
    if (groups[schema].front()->ground_truth_usage) {
      s.usage_median = median(column(
          schema, [](const ReplicateRow& r) { return r.ground_truth_usage.value_or(100.0); }));
    }
    for (const std::string& other : order) {
      const std::vector<double> other_augc = column(other, augc_of);
      const std::vector<double> other_best = column(other, best_of);
      if (other == schema || augc.size() < 2 || other_augc.size() < 2) {
        s.p_augc.emplace_back();
        s.p_best.emplace_back();
      } else {
        s.p_augc.emplace_back(mann_whitney_u(augc, other_augc));
        s.p_best.emplace_back(mann_whitney_u(best, other_best));
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_summary_csv(std::ostream& out, std::span<const SchemaSummary> summaries) {
  const bool with_usage = std::any_of(summaries.begin(), summaries.end(),
                                      [](const SchemaSummary& s) { return s.usage_median; });
  out << "schema,replicates,augc_median,augc_std,best_seen_median,best_seen_std";
  if (with_usage) out << ",ground_truth_usage_median";
  for (const SchemaSummary& s : summaries) out << ",augc_p_vs_" << s.schema;
  for (const SchemaSummary& s : summaries) out << ",best_seen_p_vs_" << s.schema;
  out << '\n';
  for (const SchemaSummary& s : summaries) {
    out << s.schema << ',' << s.replicates << ',' << format_number(s.augc_median) << ','
        << format_number(s.augc_std) << ',' << format_number(s.best_median) << ','
        << format_number(s.best_std);
    if (with_usage) out << ',' << format_number(s.usage_median.value_or(100.0));
    for (const auto& p : s.p_augc) out << ',' << (p ? format_number(*p) : "");
    for (const auto& p : s.p_best) out << ',' << (p ? format_number(*p) : "");
    out << '\n';
  }
}

void summarize_directory(const std::filesystem::path& dir) {
  const std::vector<ReplicateRow> rows = read_replicate_tables(dir);
  const std::vector<SchemaSummary> summaries = summarize(rows);
  std::ofstream out = open_for_write(dir / "summary.csv");
  write_summary_csv(out, summaries);
}

std::string render_gap_plot(std::span<const CurveGroup> groups, const std::string& title,
                            const std::string& timestamp) {
  constexpr double kWidth = 720.0;
  constexpr double kHeight = 480.0;
  constexpr double kLeft = 70.0;
  constexpr double kRight = 170.0;
  constexpr double kTop = 40.0;
  constexpr double kBottom = 60.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  std::size_t length = 1;
  for (const CurveGroup& g : groups) {
    for (const auto& c : g.curves) length = std::max(length, c.size());
  }
  const auto px = [&](std::size_t n) {
    return length <= 1 ? kLeft + plot_w / 2.0
                       : kLeft + plot_w * static_cast<double>(n) / static_cast<double>(length - 1);
  };
  const auto py = [&](double g) { return kTop + plot_h * (1.0 - std::clamp(g, 0.0, 1.0)); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<!-- generated " << xml_escape(timestamp) << " -->\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(title) << "</text>\n";

  // Axes, ticks and labels.
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\"/>\n";
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double g = t / 4.0;
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(g) + 4
        << "\" text-anchor=\"end\">" << format_number(g) << "</text>\n";
  }
  for (int t = 0; t <= 5; ++t) {
    const std::size_t n = length <= 1 ? 0 : (length - 1) * static_cast<std::size_t>(t) / 5;
    svg << "<text x=\"" << px(n) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << n + 1 << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">queries</text>\n";
  svg << "<text x=\"18\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">gap metric</text>\n";

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const CurveGroup& group = groups[gi];
    const char* color = kPalette[gi % std::size(kPalette)];
    std::vector<double> mid;
    std::vector<double> lo;
    std::vector<double> hi;
    for (std::size_t n = 0; n < length; ++n) {
      std::vector<double> column;
      for (const auto& c : group.curves) {
        if (!c.empty()) column.push_back(c[std::min(n, c.size() - 1)]);
      }
      if (column.empty()) column.push_back(0.0);
      const double m = median(column);
      const double s = sample_std(column);
      mid.push_back(m);
      lo.push_back(std::max(0.0, m - s));
      hi.push_back(std::min(1.0, m + s));
    }
    svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (std::size_t n = 0; n < length; ++n) {
      svg << format_number(px(n)) << ',' << format_number(py(hi[n])) << ' ';
    }
    for (std::size_t n = length; n-- > 0;) {
      svg << format_number(px(n)) << ',' << format_number(py(lo[n])) << (n == 0 ? "" : " ");
    }
    svg << "\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t n = 0; n < length; ++n) {
      svg << format_number(px(n)) << ',' << format_number(py(mid[n]))
          << (n + 1 == length ? "" : " ");
    }
    svg << "\"/>\n";
    const double ly = kTop + 20.0 + 22.0 * static_cast<double>(gi);
    const double lx = kLeft + plot_w + 16.0;
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
    svg << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(group.name)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void plot_directory(const std::filesystem::path& dir, const std::string& title) {
  const std::vector<ReplicateRow> rows = read_replicate_tables(dir);
  std::vector<CurveGroup> groups;
  for (const ReplicateRow& r : rows) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const CurveGroup& g) { return g.name == r.schema; });
    if (it == groups.end()) {
      groups.push_back({r.schema, {}});
      it = groups.end() - 1;
    }
    it->curves.push_back(r.gap);
  }
  // Timestamp only in the comment line; everything else is deterministic.
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  std::ofstream out = open_for_write(dir / "gap_plot.svg");
  out << render_gap_plot(groups, title, stamp);
}

}  // namespace w2bgp
