#ifndef DYNLOC_VERSION_HPP
#define DYNLOC_VERSION_HPP

namespace dynloc {
inline constexpr const char* version = "0.1.0";
}

#endif
