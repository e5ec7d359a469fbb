#include "mgnull/moments.hpp"

namespace mgnull {

std::string to_string(GraphModel model) {
  return model == GraphModel::uniform ? "uniform" : "configuration";
}

std::string to_string(MomentSource source) {
  switch (source) {
    case MomentSource::chung_lu: return "cl";
    case MomentSource::uniform_solver: return "uniform-I";
    case MomentSource::mcmc: return "mcmc";
    case MomentSource::oracle: return "oracle";
    case MomentSource::custom: return "custom";
  }
  return "custom";
}

}  // namespace mgnull
