#ifndef ODDWHEEL_ERRORS_HH
#define ODDWHEEL_ERRORS_HH

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oddwheel
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class InvalidArgument : public Error
    {
    public:
        using Error::Error;
    };

    /// Raised when a product would exceed the vertex-count cap.
    class CapacityError : public Error
    {
    public:
        using Error::Error;
    };

    class ParseError : public Error
    {
    private:
        std::size_t _offset;

    public:
        ParseError(const std::string & message, std::size_t offset) :
            Error(message + " at offset " + std::to_string(offset)),
            _offset(offset)
        {
        }

        auto offset() const -> std::size_t { return _offset; }
    };

    /// A certificate or stored file failed to load or verify. The line is
    /// 1-based, or 0 when the failure is not tied to a line.
    class CertificateError : public Error
    {
    private:
        int _line;

    public:
        CertificateError(const std::string & message, int line = 0) :
            Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
            _line(line)
        {
        }

        auto line() const -> int { return _line; }
    };
}

#endif
