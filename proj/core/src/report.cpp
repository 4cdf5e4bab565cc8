#include "ymh/report.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace ymh {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class T>
T parse_number(std::string_view s, std::string_view key) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("bad value for " + std::string(key) + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string format_report(const ResidualReport& r) {
  std::string out;
  for (const auto& e : r.entries()) {
    out += "equation=";
    out += to_string(e.id);
    out += " max_abs=" + shortest(e.max_abs);
    out += " rms=" + shortest(e.rms);
    out += " n_samples=" + std::to_string(e.n_samples);
    out += " fd_step=" + shortest(e.fd_step);
    out += '\n';
  }
  return out;
}

ResidualReport parse_report(std::string_view text) {
  ResidualReport r;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string tok;
    ResidualEntry e;
    int seen = 0;
    while (fields >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + tok + "'");
      const std::string_view key(tok.data(), eq);
      const std::string_view val(tok.data() + eq + 1, tok.size() - eq - 1);
      if (key == "equation") {
        auto id = equation_from_string(val);
        if (!id) throw std::invalid_argument("unknown equation id '" + std::string(val) + "'");
        e.id = *id;
        seen |= 1;
      } else if (key == "max_abs") {
        e.max_abs = parse_number<double>(val, key);
        seen |= 2;
      } else if (key == "rms") {
        e.rms = parse_number<double>(val, key);
        seen |= 4;
      } else if (key == "n_samples") {
        e.n_samples = parse_number<std::size_t>(val, key);
        seen |= 8;
      } else if (key == "fd_step") {
        e.fd_step = parse_number<double>(val, key);
        seen |= 16;
      } else {
        throw std::invalid_argument("unknown report key '" + std::string(key) + "'");
      }
    }
    if (seen != 31) throw std::invalid_argument("incomplete report record: '" + line + "'");
    r.set(e);
  }
  return r;
}

}  // namespace ymh
