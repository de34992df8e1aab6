#include "tsmfg/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tsmfg/error.hpp"

namespace tsmfg {

std::string format_shortest(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string time_label(double t) {
  if (std::abs(t) < 5e-7) t = 0.0;
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "t=%.6f", t);
  return buffer;
}

std::string csv_text(const SolutionTrace& trace) {
  if (trace.snapshots.empty()) throw DomainError("cannot write an empty trace");
  std::vector<const Snapshot*> ordered;
  for (const auto& s : trace.snapshots) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(), [](const Snapshot* a, const Snapshot* b) { return a->t < b->t; });

  const Grid1D& grid = ordered.front()->field.grid();
  for (const Snapshot* s : ordered)
    if (!(s->field.grid() == grid)) throw DomainError("snapshots of one trace must share a grid");

  std::string out = "x";
  for (const Snapshot* s : ordered) out += "," + time_label(s->t);
  out += '\n';
  for (std::size_t j = 0; j < grid.nodes(); ++j) {
    out += format_shortest(grid.node(j));
    for (const Snapshot* s : ordered) {
      out += ',';
      out += format_shortest(s->field[j]);
    }
    out += '\n';
  }
  return out;
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << contents;
    os.flush();
    if (!os) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void emit_csv(const SolutionTrace& trace, const std::filesystem::path& path) { write_atomically(path, csv_text(trace)); }

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

double parse_double(const std::string& text, std::size_t line) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size())
    throw ConfigError("malformed CSV: bad number '" + text + "' on line " + std::to_string(line));
  return value;
}

std::string xml_escape(const std::string& s) {
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

double nice_step(double range) {
  const double raw = range / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / magnitude;
  const double nice = r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0;
  return nice * magnitude;
}

std::string tick_text(double v, double step) {
  if (std::abs(v) < 1e-9 * step) v = 0.0;
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", v);
  return buffer;
}

std::string fixed(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::size_t find_column(const CsvTable& table, const std::string& name) {
  for (std::size_t c = 1; c < table.headers.size(); ++c)
    if (table.headers[c] == name) return c;
  // "t=<number>" matches a snapshot label numerically.
  if (name.rfind("t=", 0) == 0) {
    double wanted = 0.0;
    const auto r = std::from_chars(name.data() + 2, name.data() + name.size(), wanted);
    if (r.ec == std::errc() && r.ptr == name.data() + name.size()) {
      for (std::size_t c = 1; c < table.headers.size(); ++c) {
        double have = 0.0;
        const auto& h = table.headers[c];
        if (h.rfind("t=", 0) != 0) continue;
        const auto rh = std::from_chars(h.data() + 2, h.data() + h.size(), have);
        if (rh.ec == std::errc() && std::abs(have - wanted) < 5e-7) return c;
      }
    }
  }
  std::string available;
  for (std::size_t c = 1; c < table.headers.size(); ++c) available += (c > 1 ? ", " : "") + table.headers[c];
  throw ConfigError("unknown column '" + name + "'; available: " + available);
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open CSV " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(is, line) || line.empty()) throw ConfigError("malformed CSV: missing header");
  table.headers = split(line);
  if (table.headers.size() < 2 || table.headers[0] != "x") throw ConfigError("malformed CSV: header must start with x");
  table.columns.resize(table.headers.size());
  std::size_t number = 1;
  while (std::getline(is, line)) {
    ++number;
    if (line.empty()) continue;
    const auto parts = split(line);
    if (parts.size() != table.headers.size())
      throw ConfigError("malformed CSV: line " + std::to_string(number) + " has " + std::to_string(parts.size()) +
                        " fields, expected " + std::to_string(table.headers.size()));
    for (std::size_t c = 0; c < parts.size(); ++c) table.columns[c].push_back(parse_double(parts[c], number));
  }
  if (table.columns[0].size() < 2) throw ConfigError("malformed CSV: fewer than two rows");
  return table;
}

std::string svg_text(const CsvTable& table, const PlotOptions& options) {
  std::vector<std::size_t> selected;
  if (options.columns.empty()) {
    for (std::size_t c = 1; c < table.headers.size(); ++c) selected.push_back(c);
  } else {
    for (const auto& name : options.columns) selected.push_back(find_column(table, name));
  }

  constexpr double width = 800.0;
  constexpr double height = 600.0;
  constexpr double left = 80.0;
  constexpr double right = 770.0;
  constexpr double top = 60.0;
  constexpr double bottom = 540.0;

  const auto& x = table.columns[0];
  const double xmin = *std::min_element(x.begin(), x.end());
  const double xmax = *std::max_element(x.begin(), x.end());
  double ymin = INFINITY;
  double ymax = -INFINITY;
  for (std::size_t c : selected)
    for (double v : table.columns[c]) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (ymax - ymin < 1e-12 * std::max(1.0, std::abs(ymax))) {
    const double pad = std::max(0.5, 0.5 * std::abs(ymax));
    ymin -= pad;
    ymax += pad;
  } else {
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
  }
  auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * (right - left); };
  auto py = [&](double v) { return bottom - (v - ymin) / (ymax - ymin) * (bottom - top); };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
        "viewBox=\"0 0 800 600\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  if (!options.title.empty())
    os << "<text x=\"400\" y=\"32\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">"
       << xml_escape(options.title) << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\"" << bottom - top
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  const double xs = nice_step(xmax - xmin);
  for (double v = std::ceil(xmin / xs) * xs; v <= xmax + 1e-9 * xs; v += xs) {
    os << "<line x1=\"" << fixed(px(v)) << "\" y1=\"" << bottom << "\" x2=\"" << fixed(px(v)) << "\" y2=\""
       << bottom + 6 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << fixed(px(v)) << "\" y=\"" << bottom + 22 << "\" text-anchor=\"middle\">"
       << tick_text(v, xs) << "</text>\n";
  }
  const double ys = nice_step(ymax - ymin);
  for (double v = std::ceil(ymin / ys) * ys; v <= ymax + 1e-9 * ys; v += ys) {
    os << "<line x1=\"" << left - 6 << "\" y1=\"" << fixed(py(v)) << "\" x2=\"" << left << "\" y2=\""
       << fixed(py(v)) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << left - 10 << "\" y=\"" << fixed(py(v) + 4) << "\" text-anchor=\"end\">"
       << tick_text(v, ys) << "</text>\n";
  }
  os << "<text x=\"" << 0.5 * (left + right) << "\" y=\"" << bottom + 48 << "\" text-anchor=\"middle\">"
     << xml_escape(table.headers[0]) << "</text>\n";
  os << "</g>\n";

  for (std::size_t k = 0; k < selected.size(); ++k) {
    const auto& y = table.columns[selected[k]];
    os << "<polyline fill=\"none\" stroke=\"" << palette[k % 10] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < x.size(); ++j) os << (j ? " " : "") << fixed(px(x[j])) << ',' << fixed(py(y[j]));
    os << "\"/>\n";
  }

  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const double y = top + 18.0 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << right - 130 << "\" y1=\"" << y << "\" x2=\"" << right - 105 << "\" y2=\"" << y
       << "\" stroke=\"" << palette[k % 10] << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << right - 98 << "\" y=\"" << y + 4 << "\">" << xml_escape(table.headers[selected[k]])
       << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void emit_svg_plot(const std::filesystem::path& csv_path, const std::filesystem::path& svg_path,
                   const PlotOptions& options) {
  write_atomically(svg_path, svg_text(read_csv(csv_path), options));
}

}  // namespace tsmfg
