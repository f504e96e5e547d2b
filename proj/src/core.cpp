#include <flatfront/core.hpp>

#include <cmath>

namespace flatfront {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::DegenerateQuad: return "DegenerateQuad";
    case ErrorKind::PoleOnVertex: return "PoleOnVertex";
    case ErrorKind::RegularityViolation: return "RegularityViolation";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NegativeBranch: return "NegativeBranch";
    case ErrorKind::NotFlat: return "NotFlat";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::SingularEdge: return "SingularEdge";
    case ErrorKind::NotUnitSpacelike: return "NotUnitSpacelike";
    case ErrorKind::NoIntersection: return "NoIntersection";
    case ErrorKind::DegenerateStep: return "DegenerateStep";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::EntryMismatch: return "EntryMismatch";
    case ErrorKind::NotIntegrable: return "NotIntegrable";
    case ErrorKind::WrongSheet: return "WrongSheet";
    case ErrorKind::NotUnitTimelike: return "NotUnitTimelike";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message, std::optional<std::size_t> cell,
                     double residual)
{
    std::string out(to_string(kind));
    out += ": ";
    out += message;
    if (cell) out += " (cell " + std::to_string(*cell) + ")";
    if (!std::isnan(residual)) out += " (residual " + std::to_string(residual) + ")";
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> cell,
             double residual)
    : std::runtime_error(decorate(kind, message, cell, residual))
    , m_kind(kind)
    , m_message(message)
    , m_cell(cell)
    , m_residual(residual)
{}

Real Residuals::max() const
{
    Real out = 0;
    for (const auto& v : values)
        if (!isnan(v) && v > out) out = v;
    return out;
}

std::optional<std::size_t> Residuals::worst() const
{
    std::optional<std::size_t> idx;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (isnan(values[k])) continue;
        if (!idx || values[k] > values[*idx]) idx = k;
    }
    return idx;
}

std::vector<std::size_t> Residuals::above(const Real& tol) const
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < values.size(); ++k)
        if (!isnan(values[k]) && values[k] > tol) out.push_back(k);
    return out;
}

const Tolerances& default_tolerances()
{
    static const Tolerances tol;
    return tol;
}

}  // namespace flatfront
