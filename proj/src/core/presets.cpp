#include "core/presets.hpp"

#include "core/errors.hpp"

namespace toric {

namespace {

struct PresetRow {
  const char* name;
  int dim;
  std::vector<std::pair<Vec, double>> entries;  // (a_alpha, b_alpha)
  const char* note;
};

const std::vector<PresetRow>& raw_rows() {
  static const std::vector<PresetRow> rows = {
#include "core/preset_data.inc"
  };
  return rows;
}

}  // namespace

const std::vector<BasePreset>& base_preset_registry() {
  static const std::vector<BasePreset> registry = [] {
    std::vector<BasePreset> out;
    for (const auto& r : raw_rows()) {
      BasePreset p;
      p.name = r.name;
      p.dim = r.dim;
      for (const auto& e : r.entries) {
        p.raw_a.push_back(e.first);
        p.raw_b.push_back(e.second);
      }
      p.note = r.note;
      out.push_back(std::move(p));
    }
    return out;
  }();
  return registry;
}

WeightFormSet load_base_preset(const std::string& name) {
  for (const auto& p : base_preset_registry()) {
    if (p.name != name) continue;
    for (size_t i = 0; i < p.raw_b.size(); ++i)
      if (!(p.raw_b[i] > 0.0))
        fail(ErrorCode::non_positive_weight,
             "preset '" + name + "' has a non-positive offset b");
    return WeightFormSet::from_raw(p.dim, p.raw_a, p.raw_b);
  }
  fail(ErrorCode::unknown_preset, "unknown base preset '" + name + "'");
}

}  // namespace toric
