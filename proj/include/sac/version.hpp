#ifndef SAC_VERSION_HPP
#define SAC_VERSION_HPP

namespace sac {

inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace sac

#endif  // SAC_VERSION_HPP
