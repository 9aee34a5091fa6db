#include "cyclegsp/error.hpp"

namespace cyclegsp {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::BadVertex: return "BadVertex";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::NoPerfectMatching: return "NoPerfectMatching";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidMatching: return "InvalidMatching";
    case ErrorCode::NotTwoRegular: return "NotTwoRegular";
    case ErrorCode::NoCycleCover: return "NoCycleCover";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CoverMismatch: return "CoverMismatch";
    case ErrorCode::BadPermutation: return "BadPermutation";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

}  // namespace cyclegsp
