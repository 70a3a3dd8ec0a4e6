#ifndef TORIC_PRESETS_HPP
#define TORIC_PRESETS_HPP

#include <string>
#include <vector>

#include "core/forms.hpp"

namespace toric {

struct BasePreset {
  std::string name;
  int dim = 0;
  std::vector<Vec> raw_a;  // pre-conversion weights a_alpha
  Vec raw_b;               // offsets b_alpha
  std::string note;
};

const std::vector<BasePreset>& base_preset_registry();

// Looks up a preset and converts it into a form set; asserts the b > 0
// invariant at load time. Throws UnknownPreset for names outside the
// registry.
WeightFormSet load_base_preset(const std::string& name);

}  // namespace toric

#endif
