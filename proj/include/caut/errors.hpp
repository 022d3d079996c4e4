#pragma once

#include <stdexcept>
#include <string>

namespace caut {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exact_arith
struct var_mismatch_error : error { using error::error; };
struct zero_denominator_error : error { using error::error; };
struct not_laurent_error : error { using error::error; };

// quiver / seed_engine
struct index_error : error { using error::error; };
struct incomplete_graph_error : error { using error::error; };
struct unreachable_error : error { using error::error; };

// cluster_aut
struct not_a_cluster_error : error { using error::error; };
struct bound_exceeded_error : error { using error::error; };

// surface
struct excluded_surface_error : error { using error::error; };
struct not_flippable_error : error { using error::error; };
struct closed_once_punctured_error : error { using error::error; };
struct unsupported_family_error : error { using error::error; };

// cli / parsing
struct input_error : error { using error::error; };

} // namespace caut
