#include <cpf/geodesy.hpp>

#include <cmath>

namespace cpf
{
    Vec2 lonlat_to_local (double lon_deg, double lat_deg, const GeoOrigin &origin)
    {
        constexpr double deg = kPi / 180.0;
        const double north = (lat_deg - origin.lat_deg) * deg * kEarthMeanRadius;
        const double east = (lon_deg - origin.lon_deg) * deg * kEarthMeanRadius * std::cos (origin.lat_deg * deg);
        return {north, east};
    }
} // namespace cpf
