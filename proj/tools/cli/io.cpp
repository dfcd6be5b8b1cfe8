#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "toml_lite.hpp"

namespace fractosc::cli {

namespace fs = std::filesystem;

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      fs::remove(tmp);
      throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, target);
}

std::string trace_csv(const SampledFn& x, const std::vector<std::string>& trailers) {
  std::string out = "t,x\n";
  out.reserve(40 * x.size() + 16);
  char buf[80];
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int n = std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x.t(i), x[i]);
    out.append(buf, static_cast<std::size_t>(n));
  }
  for (const auto& t : trailers) out += "# " + t + "\n";
  return out;
}

namespace {

double to_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) {
    throw SpecError("csv line " + std::to_string(line) + ": invalid number '" + s + "'");
  }
  return v;
}

}  // namespace

CsvTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open csv '" + path + "'");
  CsvTrace r;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string c = line.substr(1);
      if (!c.empty() && c[0] == ' ') c.erase(0, 1);
      if (c.rfind("diverged_at=", 0) == 0) {
        r.diverged_at = static_cast<std::size_t>(to_double(c.substr(12, c.find(' ') - 12), lineno));
      }
      r.comments.push_back(c);
      continue;
    }
    if (!header) {
      if (line != "t,x") throw SpecError("csv: expected header 't,x', got '" + line + "'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw SpecError("csv line " + std::to_string(lineno) + ": expected two columns");
    }
    r.t.push_back(to_double(line.substr(0, comma), lineno));
    r.x.push_back(to_double(line.substr(comma + 1), lineno));
  }
  if (!header) throw SpecError("csv: missing header");
  if (r.t.empty()) throw SpecError("csv: no data rows");
  return r;
}

namespace {

// 1, 2 or 5 times a power of ten, giving about `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

std::string tick_label(double v, double step) {
  char buf[32];
  if (std::abs(v) < step * 1e-9) v = 0.0;
  const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
  std::snprintf(buf, sizeof buf, "%.*f", std::max(decimals, 0), v);
  return buf;
}

}  // namespace

std::string render_svg(const std::string& title, const std::vector<SvgSeries>& series,
                       const std::string& x_label, const std::string& y_label) {
  constexpr double W = 800, H = 500, L = 80, R = 20, T = 40, B = 60;
  double t0 = INFINITY, t1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      t0 = std::min(t0, s.t[i]);
      t1 = std::max(t1, s.t[i]);
      y0 = std::min(y0, s.x[i]);
      y1 = std::max(y1, s.x[i]);
    }
  }
  if (!(t1 > t0)) {
    t0 = std::isfinite(t0) ? t0 : 0.0;
    t1 = t0 + 1.0;
  }
  if (!(y1 > y0)) {
    const double c = std::isfinite(y0) ? y0 : 0.0;
    y0 = c - 1.0;
    y1 = c + 1.0;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double t) { return L + (t - t0) / (t1 - t0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream os;
  char buf[128];
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << esc(title)
     << "</text>\n";
  os << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", L,
                H - B, W - R, H - B);
  os << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", L, T, L,
                H - B);
  os << buf;
  os << "</g>\n<g class=\"ticks\" font-size=\"11\">\n";
  const double ts = nice_step(t1 - t0, 7);
  for (double v = std::ceil(t0 / ts) * ts; v <= t1 + 1e-9 * ts; v += ts) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>", px(v),
                  H - B, px(v), H - B + 5);
    os << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">", px(v),
                  H - B + 18);
    os << buf << tick_label(v, ts) << "</text>\n";
  }
  const double ys = nice_step(y1 - y0, 6);
  for (double v = std::ceil(y0 / ys) * ys; v <= y1 + 1e-9 * ys; v += ys) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>", L - 5,
                  py(v), L, py(v));
    os << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">", L - 8,
                  py(v) + 4);
    os << buf << tick_label(v, ys) << "</text>\n";
  }
  os << "</g>\n";
  if (y0 < 0.0 && y1 > 0.0) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#999\" "
                  "stroke-dasharray=\"4 3\"/>\n",
                  L, py(0.0), W - R, py(0.0));
    os << buf;
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\">"
     << esc(x_label) << "</text>\n";
  os << "<text x=\"20\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << (T + H - B) / 2 << ")\">" << esc(y_label) << "</text>\n";

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    os << "<polyline fill=\"none\" stroke=\"" << colors[k % 4] << "\" stroke-width=\"1\"";
    if (!s.label.empty()) os << " data-label=\"" << esc(s.label) << "\"";
    os << " points=\"";
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(s.t[i]), py(s.x[i]));
      os << buf;
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace fractosc::cli
