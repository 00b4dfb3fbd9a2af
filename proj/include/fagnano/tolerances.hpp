#pragma once

namespace fagnano {

// Absolute thresholds. Mass comparisons are relative.
struct Tolerances {
    double representation = 1e-12; // <x,x> = -1, <u,u> = +1
    double identity = 1e-10;        // closed-form geometric identities
    double orbit = 1e-8;            // end-to-end orbit checks
    double classify = 1e-9;         // Minkowski facet margins
    double incidence = 1e-10;
    double collinearity = 1e-9;
    double centroid = 1e-9;
    double angle = 1e-8;
    double closure = 1e-8;
    double root = 1e-13;            // |g(y0)|
    double distance_identity = 1e-12;           // trig identity, relative

    static Tolerances uniform(double value) {
        return {value, value, value, value, value, value, value, value, value, value, value};
    }
};

} // namespace fagnano
