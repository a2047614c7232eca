#ifndef HARMONICA_RENDER_HPP
#define HARMONICA_RENDER_HPP

#include <optional>
#include <string>

#include "harmonica/complex.hpp"

namespace harmonica {

/// SVG drawing of a simplicial complex with the support of a chain
/// highlighted. With a second chain, the highlighted cells are the symmetric
/// difference of the two supports. Points are projected onto their first two
/// coordinates. Output depends only on the inputs.
std::string render_svg(const SimplicialComplex& s, const PointCloud& coordinates, const Chain& chain,
                       const std::optional<Chain>& other = std::nullopt);

}  // namespace harmonica

#endif  // HARMONICA_RENDER_HPP
