#pragma once
/**
 * @file   geodesy.hpp
 * @brief  Longitude/latitude to local planar coordinates.
 */

#include <cpf/types.hpp>

namespace cpf
{
    inline constexpr double kEarthMeanRadius = 6371000.0; // m

    /// Local tangent-plane origin in degrees.
    struct GeoOrigin
    {
        double lon_deg = 0.0;
        double lat_deg = 0.0;
    };

    /**
     * @brief Equirectangular projection about the origin latitude.
     *
     * Returns (north, east) in meters: x grows with latitude and y with
     * longitude, matching survey tables that list x as the northing.
     */
    [[nodiscard]] Vec2 lonlat_to_local (double lon_deg, double lat_deg, const GeoOrigin &origin);

} // namespace cpf
