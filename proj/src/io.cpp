#include "lemni/io.hpp"

#include <charconv>

#include "lemni/error.hpp"
#include "lemni/scene.hpp"

namespace lemni {

namespace {

double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "malformed number on CSV line " + std::to_string(line_no));
  }
  return value;
}

void finish(std::vector<Contour>& out, Contour& current) {
  if (current.points.empty()) return;
  if (current.points.size() > 2 && current.points.front() == current.points.back()) {
    current.points.pop_back();
    current.closed = true;
  }
  out.push_back(std::move(current));
  current = Contour{};
}

}  // namespace

std::string contours_to_csv(const std::vector<Contour>& contours) {
  std::string out;
  for (std::size_t k = 0; k < contours.size(); ++k) {
    if (k) out += '\n';
    const Contour& c = contours[k];
    for (Point p : c.points) out += format_exact(p.x) + "," + format_exact(p.y) + "\n";
    if (c.closed && !c.points.empty()) {
      out += format_exact(c.points.front().x) + "," + format_exact(c.points.front().y) + "\n";
    }
  }
  return out;
}

std::vector<Contour> contours_from_csv(std::string_view text) {
  std::vector<Contour> out;
  Contour current;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      finish(out, current);
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument, "CSV line " + std::to_string(line_no) + " lacks a comma");
    }
    current.points.push_back(
        {parse_double(line.substr(0, comma), line_no), parse_double(line.substr(comma + 1), line_no)});
  }
  finish(out, current);
  return out;
}

nlohmann::json make_report(const nlohmann::json& config, const std::vector<Contour>& contours,
                           const std::map<std::string, double>& checks) {
  nlohmann::json report;
  report["config"] = config;
  report["contours"] = nlohmann::json::array();
  for (const Contour& c : contours) {
    nlohmann::json pts = nlohmann::json::array();
    for (Point p : c.points) pts.push_back({p.x, p.y});
    report["contours"].push_back(std::move(pts));
  }
  report["checks"] = nlohmann::json::object();
  for (const auto& [name, value] : checks) report["checks"][name] = value;
  return report;
}

}  // namespace lemni
