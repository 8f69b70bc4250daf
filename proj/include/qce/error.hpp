#pragma once

#include <fmt/format.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace qce {

/// Coarse failure category. The CLI maps each category onto an exit status.
enum class ErrorKind {
    Usage,
    Data,
    Io,
};

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message)
    , _kind(kind)
    {
    }

    ErrorKind kind() const noexcept
    {
        return _kind;
    }

private:
    ErrorKind _kind;
};

#define QCE_DEFINE_ERROR(Name, Kind)                                                     \
    class Name : public Error                                                            \
    {                                                                                    \
    public:                                                                              \
        template <typename... Args>                                                      \
        Name(fmt::format_string<Args...> format, Args&&... args)                         \
        : Error(ErrorKind::Kind, fmt::format(format, std::forward<Args>(args)...))       \
        {                                                                                \
        }                                                                                \
    };

// Metric and benchmark errors
QCE_DEFINE_ERROR(DimensionMismatch, Data)
QCE_DEFINE_ERROR(InvalidWeights, Usage)
QCE_DEFINE_ERROR(DegenerateDimension, Data)
QCE_DEFINE_ERROR(InvalidScale, Usage)
QCE_DEFINE_ERROR(InvalidBenchmark, Usage)
QCE_DEFINE_ERROR(EmptyClusterError, Data)

// Ingestion errors
QCE_DEFINE_ERROR(SchemaError, Data)
QCE_DEFINE_ERROR(RangeError, Data)
QCE_DEFINE_ERROR(DuplicateRecordError, Data)
QCE_DEFINE_ERROR(EmptyPanelError, Data)

// Ranking and export errors
QCE_DEFINE_ERROR(UnknownBenchmark, Usage)
QCE_DEFINE_ERROR(UnknownCountry, Usage)
QCE_DEFINE_ERROR(ParseError, Data)
QCE_DEFINE_ERROR(IoError, Io)

// Configuration and argument errors
QCE_DEFINE_ERROR(ConfigError, Usage)

#undef QCE_DEFINE_ERROR

}
