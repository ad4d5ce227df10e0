#pragma once

#include <string>
#include <string_view>

#include "cicpc/channel.hpp"

namespace cicpc {

/// Parses the channel JSON document:
///   {"alphabets": {"x1":..,"x2":..,"xr1":..,"y1":..,"y2":..},
///    "transition": [x1][x2][xr1][y1][y2] nested arrays}
/// Throws MalformedChannel with a line or field diagnostic. Does not validate
/// the pmf constraints; call validate_channel for that.
ChannelLaw parse_channel(std::string_view text);

ChannelLaw load_channel(const std::string& path);

/// Serializes with 17 significant digits so a file written this way
/// round-trips byte for byte through parse_channel.
std::string format_channel(const ChannelLaw& law);

void save_channel(const ChannelLaw& law, const std::string& path);

/// Locale-independent "%.{digits}g" formatting.
std::string format_double(double value, int digits);

}  // namespace cicpc
