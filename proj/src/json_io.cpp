#include "orbitlab/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

void append_number(double x, std::string* out) {
  if (!std::isfinite(x))
    throw InvalidParams("non-finite number in JSON output");
  if (x == 0.0) x = 0.0;  // collapse negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  out->append(buf);
}

void append_value(const Json& value, std::string* out) {
  switch (value.type()) {
    case Json::value_t::null:
      out->append("null");
      break;
    case Json::value_t::boolean:
      out->append(value.get<bool>() ? "true" : "false");
      break;
    case Json::value_t::number_integer:
      out->append(std::to_string(value.get<long long>()));
      break;
    case Json::value_t::number_unsigned:
      out->append(std::to_string(value.get<unsigned long long>()));
      break;
    case Json::value_t::number_float:
      append_number(value.get<double>(), out);
      break;
    case Json::value_t::string:
      // Reuse the library's escaping; dumping a lone string is canonical.
      out->append(Json(value.get<std::string>()).dump());
      break;
    case Json::value_t::array: {
      out->push_back('[');
      bool first = true;
      for (const Json& item : value) {
        if (!first) out->push_back(',');
        first = false;
        append_value(item, out);
      }
      out->push_back(']');
      break;
    }
    case Json::value_t::object: {
      // The default object container is a sorted map, so iteration order is
      // already the canonical key order.
      out->push_back('{');
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out->push_back(',');
        first = false;
        out->append(Json(it.key()).dump());
        out->push_back(':');
        append_value(it.value(), out);
      }
      out->push_back('}');
      break;
    }
    default:
      throw InvalidParams("unsupported JSON value type");
  }
}

const char* part_name(SpectrumPart part) {
  switch (part) {
    case SpectrumPart::QPart: return "q";
    case SpectrumPart::HPrimePart: return "h_prime";
    case SpectrumPart::ZeroPart: return "zero";
  }
  return "q";
}

} // namespace

std::string dump_canonical(const Json& value) {
  std::string out;
  append_value(value, &out);
  return out;
}

Json json_complex(cplx z) {
  return Json{{"im", z.imag()}, {"re", z.real()}};
}

Json json_of(const RestrictedRootSystem& system) {
  Json basis = Json::array();
  const Mat& b = system.cartan.basis;
  for (int j = 0; j < b.cols(); ++j) {
    Json column = Json::array();
    for (int i = 0; i < b.rows(); ++i) column.push_back(b(i, j));
    basis.push_back(column);
  }

  Json roots = Json::array();
  for (const RestrictedRoot& root : system.roots) {
    Json values = Json::array();
    for (int i = 0; i < root.values.size(); ++i)
      values.push_back(json_complex(root.values(i)));
    roots.push_back(Json{{"mult_h", root.mult_h},
                         {"mult_q", root.mult_q},
                         {"values", values}});
  }

  return Json{{"schema", kJsonSchema},
              {"kind", "root_system"},
              {"rank", system.cartan.rank()},
              {"cartan_basis", basis},
              {"dim_g", system.pair.algebra().dim()},
              {"dim_h", system.pair.h().dim()},
              {"dim_q", system.pair.q().dim()},
              {"roots", roots},
              {"zero_dim_h", static_cast<int>(system.zero_h.cols())},
              {"zero_dim_q", static_cast<int>(system.zero_q.cols())}};
}

Json json_of(const OrbitSpectrum& spectrum) {
  Json entries = Json::array();
  for (const SpectrumEntry& entry : spectrum.entries)
    entries.push_back(Json{{"annihilates_w", entry.annihilates_w},
                           {"eigenvalue", json_complex(entry.eigenvalue)},
                           {"mult", entry.mult},
                           {"part", part_name(entry.part)},
                           {"root_index", entry.root_index}});
  return Json{{"schema", kJsonSchema},
              {"kind", "orbit_spectrum"},
              {"covered_dim", spectrum.covered_dim()},
              {"entries", entries},
              {"space_dim", spectrum.space_dim}};
}

Json json_of(const FocalSet& focal) {
  Json families = Json::array();
  for (const FocalFamily& family : focal.families)
    families.push_back(Json{{"mult", family.mult},
                            {"offset", json_complex(family.offset)},
                            {"root_index", family.root_index},
                            {"step", json_complex(family.step)}});
  Json window = Json::array();
  for (const FocalWindowEntry& entry : focal.window)
    window.push_back(Json{{"k", entry.k},
                          {"mult", entry.mult},
                          {"root_index", entry.root_index},
                          {"z", json_complex(entry.z)}});
  return Json{{"schema", kJsonSchema},
              {"kind", "focal_set"},
              {"families", families},
              {"window", window}};
}

Json json_of(const CohomogeneityRow& row) {
  return Json{{"schema", kJsonSchema},
              {"kind", "cohomogeneity_row"},
              {"space", row.space},
              {"K_group", row.K_group},
              {"L_group", row.L_group},
              {"cohom_K", row.cohom_K},
              {"cohom_L", row.cohom_L},
              {"formula_K", row.formula_K},
              {"formula_L", row.formula_L},
              {"expected_K", row.expected_K},
              {"expected_L", row.expected_L},
              {"ambiguous_L", row.ambiguous_L},
              {"formula_K_low", row.formula_K_low},
              {"formula_L_low", row.formula_L_low},
              {"stable", row.stable}};
}

Json json_of(const oracle::ScanReport& report) {
  Json zeros = Json::array();
  for (const oracle::ScanZero& zero : report.zeros_found)
    zeros.push_back(Json{{"mult", zero.mult}, {"z", json_complex(zero.z)}});
  return Json{{"schema", kJsonSchema},
              {"kind", "scan_report"},
              {"diverged_seeds", report.diverged_seeds},
              {"grid_resolution", report.grid_resolution},
              {"max_residual", report.max_residual},
              {"newton_iterations", report.newton_iterations},
              {"zeros_found", zeros}};
}

Json json_error(const std::string& code, const std::string& message) {
  // Error::what() prefixes the code; drop the duplication in the envelope.
  std::string text = message;
  const std::string prefix = code + ": ";
  if (text.rfind(prefix, 0) == 0) text = text.substr(prefix.size());
  return Json{{"schema", kJsonSchema},
              {"kind", "error"},
              {"error", Json{{"code", code}, {"message", text}}}};
}

} // namespace orbitlab
