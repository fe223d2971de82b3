// Copyright 2026 The Faircap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "faircap/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "faircap/error.h"

namespace faircap {
namespace {

constexpr double kWidth = 760;
constexpr double kHeight = 440;
constexpr double kLeft = 80;
constexpr double kRight = 230;
constexpr double kTop = 48;
constexpr double kBottom = 56;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

struct Range {
  double lo;
  double hi;
};

// Maps data coordinates into the plot area.
class Frame {
 public:
  Frame(Range x, Range y) : x_(x), y_(y) {
    if (x_.hi <= x_.lo) x_ = {x_.lo - 1, x_.lo + 1};
    if (y_.hi <= y_.lo) y_ = {y_.lo - 1, y_.lo + 1};
  }
  double X(double v) const {
    return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight);
  }
  double Y(double v) const {
    return kHeight - kBottom -
           (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom);
  }
  const Range& x() const { return x_; }
  const Range& y() const { return y_; }

 private:
  Range x_;
  Range y_;
};

void Open(std::ostringstream& svg, const std::string& title) {
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(kWidth)
      << "\" height=\"" << Num(kHeight) << "\" viewBox=\"0 0 " << Num(kWidth)
      << ' ' << Num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << Num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
         "font-size=\"15\">" << Escape(title) << "</text>\n";
}

void Axes(std::ostringstream& svg, const Frame& f, const std::vector<double>& xticks,
          const std::string& xlabel, const std::string& ylabel) {
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;
  svg << "<g class=\"axes\" stroke=\"#333\">\n"
      << "<line x1=\"" << Num(x0) << "\" y1=\"" << Num(y0) << "\" x2=\"" << Num(x1)
      << "\" y2=\"" << Num(y0) << "\"/>\n"
      << "<line x1=\"" << Num(x0) << "\" y1=\"" << Num(y0) << "\" x2=\"" << Num(x0)
      << "\" y2=\"" << Num(y1) << "\"/>\n</g>\n";
  for (double t : xticks) {
    svg << "<text x=\"" << Num(f.X(t)) << "\" y=\"" << Num(y0 + 18)
        << "\" text-anchor=\"middle\">" << Num(t) << "</text>\n";
  }
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double v = f.y().lo + (f.y().hi - f.y().lo) * i / kTicks;
    svg << "<line x1=\"" << Num(x0) << "\" y1=\"" << Num(f.Y(v)) << "\" x2=\""
        << Num(x1) << "\" y2=\"" << Num(f.Y(v))
        << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n"
        << "<text x=\"" << Num(x0 - 6) << "\" y=\"" << Num(f.Y(v) + 4)
        << "\" text-anchor=\"end\">" << Num(v) << "</text>\n";
  }
  svg << "<text x=\"" << Num((x0 + x1) / 2) << "\" y=\"" << Num(kHeight - 14)
      << "\" text-anchor=\"middle\">" << Escape(xlabel) << "</text>\n"
      << "<text transform=\"translate(20," << Num((y0 + y1) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << Escape(ylabel)
      << "</text>\n";
}

void Legend(std::ostringstream& svg, const std::vector<std::string>& methods,
            const std::vector<std::pair<std::string, std::string>>& extra) {
  double y = kTop + 6;
  const double x = kWidth - kRight + 16;
  for (std::size_t i = 0; i < methods.size(); ++i, y += 18) {
    svg << "<rect x=\"" << Num(x) << "\" y=\"" << Num(y - 9)
        << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[i % 8] << "\"/>\n"
        << "<text x=\"" << Num(x + 18) << "\" y=\"" << Num(y + 1) << "\">"
        << Escape(methods[i]) << "</text>\n";
  }
  for (const auto& [label, dash] : extra) {
    svg << "<line x1=\"" << Num(x) << "\" y1=\"" << Num(y - 3) << "\" x2=\""
        << Num(x + 12) << "\" y2=\"" << Num(y - 3)
        << "\" stroke=\"#000\" stroke-dasharray=\"" << dash << "\"/>\n"
        << "<text x=\"" << Num(x + 18) << "\" y=\"" << Num(y + 1) << "\">"
        << Escape(label) << "</text>\n";
    y += 18;
  }
}

// Line chart of one metric over k, one series per method.
std::string LineChart(const std::string& title, const std::string& ylabel,
                      const std::map<std::string, std::map<int, double>>& series,
                      Range yrange, const std::vector<std::pair<std::string, double>>& dashed,
                      const std::vector<std::pair<std::string, double>>& dotted) {
  std::set<int> ks;
  for (const auto& [m, points] : series) {
    for (const auto& [k, v] : points) ks.insert(k);
  }
  const Frame f({static_cast<double>(*ks.begin()), static_cast<double>(*ks.rbegin())},
                yrange);
  std::ostringstream svg;
  Open(svg, title);
  std::vector<double> xticks(ks.begin(), ks.end());
  Axes(svg, f, xticks, "k", ylabel);

  std::vector<std::string> methods;
  std::size_t color = 0;
  for (const auto& [method, points] : series) {
    methods.push_back(method);
    const char* c = kPalette[color++ % 8];
    svg << "<g class=\"series\" data-method=\"" << Escape(method) << "\">\n";
    if (points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\"";
      bool first = true;
      for (const auto& [k, v] : points) {
        svg << (first ? "" : " ") << Num(f.X(k)) << ',' << Num(f.Y(v));
        first = false;
      }
      svg << "\"/>\n";
    }
    for (const auto& [k, v] : points) {
      svg << "<circle cx=\"" << Num(f.X(k)) << "\" cy=\"" << Num(f.Y(v))
          << "\" r=\"3\" fill=\"" << c << "\" data-k=\"" << k << "\" data-value=\""
          << Num(v) << "\"/>\n";
    }
    svg << "</g>\n";
  }
  std::vector<std::pair<std::string, std::string>> extra;
  auto hline = [&](const std::string& cls, const std::string& label, double v,
                   const char* dash) {
    svg << "<line class=\"" << cls << "\" data-value=\"" << Num(v) << "\" x1=\""
        << Num(kLeft) << "\" y1=\"" << Num(f.Y(v)) << "\" x2=\""
        << Num(kWidth - kRight) << "\" y2=\"" << Num(f.Y(v))
        << "\" stroke=\"#000\" stroke-dasharray=\"" << dash << "\"/>\n";
    extra.push_back({label, dash});
  };
  for (const auto& [label, v] : dashed) hline("threshold-t", label, v, "6,4");
  for (const auto& [label, v] : dotted) hline("dataset-balance", label, v, "2,3");
  Legend(svg, methods, extra);
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

SweepData ParseSweep(const std::string& jsonl) {
  SweepData data;
  std::istringstream in(jsonl);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(DataErrorKind::kIo, "line " + std::to_string(number) +
                                              ": " + e.what());
    }
    if (j.value("type", "record") == "provenance") {
      data.provenance = std::move(j);
    } else {
      data.records.push_back(RecordFromJson(j));
    }
  }
  return data;
}

SweepData ReadSweep(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(DataErrorKind::kIo, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseSweep(buffer.str());
}

Report RenderReport(const SweepData& sweep) {
  std::vector<const RunRecord*> ok;
  for (const auto& r : sweep.records) {
    if (r.ok()) ok.push_back(&r);
  }
  if (ok.empty()) throw ContractViolation("report needs at least one successful record");

  std::string dataset = "dataset";
  double dataset_balance = -1.0;
  if (sweep.provenance.is_object()) {
    dataset = sweep.provenance.value("dataset", dataset);
    dataset_balance = sweep.provenance.value("dataset_balance", -1.0);
  }
  const RunRecord& first = *ok.front();

  Report report;
  std::map<std::string, std::map<int, double>> cost;
  std::map<std::string, std::map<int, double>> balance;
  double max_cost = 0.0;
  for (const RunRecord* r : ok) {
    cost[r->method][r->k] = r->cost;
    balance[r->method][r->k] = r->balance.value();
    max_cost = std::max(max_cost, r->cost);
  }
  report.cost_svg = LineChart(dataset + ": clustering cost", "cost", cost,
                              {0.0, max_cost > 0 ? max_cost * 1.05 : 1.0}, {}, {});
  std::vector<std::pair<std::string, double>> dotted;
  if (dataset_balance >= 0.0) {
    dotted.push_back({"dataset balance", dataset_balance});
  }
  report.balance_svg =
      LineChart(dataset + ": balance", "balance", balance, {0.0, 1.0},
                {{"t = " + first.t.ToString(), first.t.value()}}, dotted);

  // Size boxplots grouped by k.
  std::set<int> ks;
  std::set<std::string> method_set;
  double top = 0.0;
  for (const RunRecord* r : ok) {
    ks.insert(r->k);
    method_set.insert(r->method);
    top = std::max({top, static_cast<double>(r->max_size()), static_cast<double>(r->q)});
  }
  const std::vector<std::string> methods(method_set.begin(), method_set.end());
  const std::vector<int> kv(ks.begin(), ks.end());
  const Frame f({-0.5, static_cast<double>(kv.size()) - 0.5}, {0.0, top * 1.05});
  std::ostringstream svg;
  Open(svg, dataset + ": cluster sizes");
  std::vector<double> none;
  Axes(svg, f, none, "k", "cluster size");
  const double group_width = f.X(1) - f.X(0);
  const double box_width = group_width * 0.8 / static_cast<double>(methods.size());
  for (std::size_t g = 0; g < kv.size(); ++g) {
    const double left = f.X(static_cast<double>(g)) - group_width * 0.4;
    svg << "<text x=\"" << Num(f.X(static_cast<double>(g))) << "\" y=\""
        << Num(kHeight - kBottom + 18) << "\" text-anchor=\"middle\">" << kv[g]
        << "</text>\n";
    std::set<long> qs;
    for (const RunRecord* r : ok) {
      if (r->k == kv[g]) qs.insert(r->q);
    }
    for (long q : qs) {
      svg << "<line class=\"capacity-q\" data-k=\"" << kv[g] << "\" data-q=\"" << q
          << "\" x1=\"" << Num(left) << "\" y1=\"" << Num(f.Y(q)) << "\" x2=\""
          << Num(left + group_width * 0.8) << "\" y2=\"" << Num(f.Y(q))
          << "\" stroke=\"#000\" stroke-dasharray=\"6,4\"/>\n";
    }
    for (const RunRecord* r : ok) {
      if (r->k != kv[g]) continue;
      const std::size_t m = static_cast<std::size_t>(
          std::find(methods.begin(), methods.end(), r->method) - methods.begin());
      const FiveNumberSummary s = SizeDispersion(r->sizes);
      const double x0 = left + box_width * m + box_width * 0.1;
      const double w = box_width * 0.8;
      const double xm = x0 + w / 2;
      const char* c = kPalette[m % 8];
      svg << "<g class=\"box\" data-method=\"" << Escape(r->method) << "\" data-k=\""
          << r->k << "\" data-min=\"" << Num(s.min) << "\" data-q1=\"" << Num(s.q1)
          << "\" data-median=\"" << Num(s.median) << "\" data-q3=\"" << Num(s.q3)
          << "\" data-max=\"" << Num(s.max) << "\">\n"
          << "<line x1=\"" << Num(xm) << "\" y1=\"" << Num(f.Y(s.min)) << "\" x2=\""
          << Num(xm) << "\" y2=\"" << Num(f.Y(s.max)) << "\" stroke=\"" << c << "\"/>\n"
          << "<rect x=\"" << Num(x0) << "\" y=\"" << Num(f.Y(s.q3)) << "\" width=\""
          << Num(w) << "\" height=\"" << Num(std::max(f.Y(s.q1) - f.Y(s.q3), 1.0))
          << "\" fill=\"" << c << "\" fill-opacity=\"0.35\" stroke=\"" << c << "\"/>\n"
          << "<line x1=\"" << Num(x0) << "\" y1=\"" << Num(f.Y(s.median)) << "\" x2=\""
          << Num(x0 + w) << "\" y2=\"" << Num(f.Y(s.median)) << "\" stroke=\"" << c
          << "\" stroke-width=\"2\"/>\n</g>\n";
    }
  }
  Legend(svg, methods, {{"capacity q", "6,4"}});
  svg << "</svg>\n";
  report.sizes_svg = svg.str();

  std::ostringstream table;
  char line[256];
  std::snprintf(line, sizeof(line), "%-26s %4s %-10s %12s %8s %6s %6s %7s %6s %6s %6s\n",
                "method", "k", "status", "cost", "balance", "min", "q1", "median",
                "q3", "max", "q");
  table << "dataset: " << dataset << "\n" << line;
  for (const auto& r : sweep.records) {
    if (r.ok()) {
      const FiveNumberSummary s = SizeDispersion(r.sizes);
      std::snprintf(line, sizeof(line),
                    "%-26s %4d %-10s %12.4f %8.4f %6g %6g %7g %6g %6g %6ld\n",
                    r.method.c_str(), r.k, r.status.c_str(), r.cost, r.balance.value(),
                    s.min, s.q1, s.median, s.q3, s.max, r.q);
    } else {
      std::snprintf(line, sizeof(line), "%-26s %4d %-10s %12s %8s %6s %6s %7s %6s %6s %6ld\n",
                    r.method.c_str(), r.k, r.status.c_str(), "-", "-", "-", "-", "-",
                    "-", "-", r.q);
    }
    table << line;
  }
  report.table_txt = table.str();
  return report;
}

void WriteReport(const Report& report, const std::string& dir,
                 const std::string& prefix) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  auto write = [&](const std::string& name, const std::string& text) {
    const fs::path path = fs::path(dir) / (prefix + name);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(DataErrorKind::kIo, "cannot write '" + path.string() + "'");
    out << text;
  };
  write("cost.svg", report.cost_svg);
  write("balance.svg", report.balance_svg);
  write("sizes.svg", report.sizes_svg);
  write("report.txt", report.table_txt);
}

}  // namespace faircap
