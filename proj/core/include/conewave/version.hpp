#ifndef CONEWAVE_VERSION_HPP
#define CONEWAVE_VERSION_HPP

namespace conewave {

inline constexpr const char* version_string = "0.1.0";

} // namespace conewave

#endif
