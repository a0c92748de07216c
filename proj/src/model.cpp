#include "paramlc/model.hpp"

#include <cmath>

namespace paramlc {

ModelParams ModelParams::two_mode(double u, double drive, double kappa, double h) {
    ModelParams p;
    p.n_modes = 2;
    p.u = u;
    p.drive = drive;
    p.kappa = kappa;
    p.h = h;
    p.coupling = Eigen::MatrixXd::Zero(2, 2);
    p.coupling(0, 1) = -1.0;
    p.coupling(1, 0) = 1.0;
    return p;
}

void ModelParams::validate() const {
    if (n_modes < 1) throw ConfigInvalid("n_modes must be positive");
    if (!(u > 0.0)) throw ConfigInvalid("Kerr strength u must be strictly positive");
    if (!(kappa > 0.0)) throw ConfigInvalid("loss rate kappa must be strictly positive");
    if (drive < 0.0) throw ConfigInvalid("drive amplitude D must be nonnegative");
    if (coupling.rows() != n_modes || coupling.cols() != n_modes)
        throw ConfigInvalid("coupling matrix dimension does not match n_modes");
    const double asym = (coupling + coupling.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) throw NotAntisymmetric("coupling matrix K is not antisymmetric");
}

double ModelParams::n_ss() const {
    if (!above_threshold()) return 0.0;
    const double ratio = kappa / (4.0 * drive);
    return (drive / u) * std::sqrt(1.0 - ratio * ratio);
}

double ModelParams::frame_angle() const {
    if (!above_threshold()) return 0.0;
    return 0.5 * std::asin(kappa / (4.0 * drive));
}

} // namespace paramlc
