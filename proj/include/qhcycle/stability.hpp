#ifndef QHCYCLE_STABILITY_HPP
#define QHCYCLE_STABILITY_HPP

#include <string>

namespace qhcycle {

enum class Stability { Stable, Unstable, NearDegenerate };

inline std::string to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Unstable: return "Unstable";
    case Stability::NearDegenerate: return "NearDegenerate";
  }
  return "?";
}

}  // namespace qhcycle

#endif
