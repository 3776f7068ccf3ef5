#ifndef MRTRIM_VERSION_HPP
#define MRTRIM_VERSION_HPP

namespace mrtrim {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace mrtrim

#endif  // MRTRIM_VERSION_HPP
