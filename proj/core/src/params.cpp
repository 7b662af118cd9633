#include "fhartree/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fhartree/errors.hpp"

namespace fhartree {

PhysParams PhysParams::make(int N, double s, double gamma) {
  PhysParams p{N, s, gamma};
  p.validate();
  return p;
}

void PhysParams::validate() const {
  std::ostringstream msg;
  if (N != 2 && N != 3) {
    msg << "dimension N must be 2 or 3, got " << N;
  } else if (!(s > 0.0 && s < 1.0)) {
    msg << "fractional order s must lie in (0,1), got " << s;
  } else if (!(gamma > 2.0 * s && gamma < std::min<double>(N, 4.0 * s))) {
    msg << "gamma must satisfy 2s < gamma < min(N, 4s); got s=" << s << ", gamma=" << gamma
        << ", N=" << N;
  } else {
    return;
  }
  throw ValidationError(msg.str());
}

PhysParams canonical_params() { return PhysParams{2, 0.7, 1.6}; }

}  // namespace fhartree
