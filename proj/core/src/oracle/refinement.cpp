#include <cmath>
#include <limits>

#include "fracsch/oracle.hpp"

namespace fracsch::oracle {

OrderEstimate refinement_order(double v_n, double v_2n, double v_4n) {
    return refinement_order_from_differences(std::fabs(v_n - v_2n), std::fabs(v_2n - v_4n));
}

OrderEstimate refinement_order_from_differences(double d_coarse, double d_fine) {
    OrderEstimate e;
    if (d_fine == 0.0) {
        e.order = std::numeric_limits<double>::infinity();
        e.monotone = true;
        return e;
    }
    e.order = std::log2(d_coarse / d_fine);
    e.monotone = d_fine < d_coarse;
    return e;
}

}  // namespace fracsch::oracle
