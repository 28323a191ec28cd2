#include "maslovp/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace maslovp {

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json index_pair_json(const IndexPair& p, bool with_levels) {
  Json j = {{"i_P", p.i_P},
            {"nu_P", p.nu_P},
            {"m_used", p.m_used},
            {"converged", p.converged},
            {"zero_band_gap", p.zero_band_gap},
            {"tau", p.tau},
            {"tau_factor", p.tau_factor},
            {"floquet_nu", p.floquet_nu},
            {"floquet_gap", p.floquet_gap}};
  if (with_levels) {
    Json levels = Json::array();
    for (const auto& l : p.levels) {
      levels.push_back({{"m", l.m}, {"i_P", l.i_P}, {"nu_P", l.nu_P}, {"neg_A", l.neg_A}, {"tau", l.tau},
                        {"gap", l.gap}});
    }
    j["levels"] = std::move(levels);
  }
  return j;
}

Json crossing_list_json(const CrossingList& c) {
  Json list = Json::array();
  for (const auto& x : c.crossings) {
    list.push_back({{"s", x.s}, {"nu", x.nu}, {"refined_width", x.refined_width}, {"sigma_min", x.sigma_min}});
  }
  return {{"crossings", std::move(list)},
          {"total", c.total},
          {"grid", c.grid_used},
          {"coarse_steps", c.coarse_steps},
          {"fine_steps", c.fine_steps}};
}

Json dual_report_json(const DualIndexReport& r) {
  Json j = {{"l", r.l},
            {"i_dual", r.i_dual},
            {"nu_dual", r.nu_dual},
            {"m_used", r.m_used},
            {"converged", r.converged},
            {"offset", r.offset},
            {"i_P", r.i_P},
            {"condition_number", r.condition_number},
            {"tau", r.tau}};
  if (r.shell_bounds_ok) {
    j["shell_bounds_ok"] = *r.shell_bounds_ok;
    j["M"] = r.M;
    j["M_lower"] = r.M_lower;
    j["M_upper"] = r.M_upper;
  } else {
    j["shell_bounds_ok"] = nullptr;
  }
  return j;
}

namespace {

void write_string(const std::string& s, std::string& out) {
  // reuse the library's escaping rules
  out += Json(s).dump();
}

void write(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      if (v == 0.0) v = 0.0;
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string text(buf);
      // keep floats recognisable as floats when read back
      if (text.find_first_of(".eEn") == std::string::npos) text += ".0";
      out += text;
      break;
    }
    case Json::value_t::string:
      write_string(j.get<std::string>(), out);
      break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(e, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      // nlohmann::json stores objects in a std::map, so iteration is sorted
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_string(it.key(), out);
        out += indent < 0 ? ":" : ": ";
        write(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      break;
    }
    default:
      out += "null";
  }
}

}  // namespace

std::string canonical_dump(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

}  // namespace maslovp
