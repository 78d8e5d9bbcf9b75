#pragma once

#include <stdexcept>
#include <string>

namespace fiso {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidGroup : Error {
    using Error::Error;
};
struct ShapeError : Error {
    using Error::Error;
};
struct IndexError : Error {
    using Error::Error;
};
struct NotASubgroup : Error {
    using Error::Error;
};
struct PartitionError : Error {
    using Error::Error;
};
struct SearchCapExceeded : Error {
    using Error::Error;
};
struct GroupTooLarge : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace fiso
