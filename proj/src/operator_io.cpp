#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "osrc/bem_core.hpp"
#include "osrc/errors.hpp"

namespace osrc
{

namespace
{

constexpr char kMagic[4] = {'O', 'E', 'B', 'M'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little, "little-endian host required");

template <typename T>
void Put(std::ofstream &out, T value)
{
  out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

template <typename T>
T Get(std::ifstream &in)
{
  T value;
  if (!in.read(reinterpret_cast<char *>(&value), sizeof(T)))
  {
    throw FormatError("operator file truncated");
  }
  return value;
}

void PutComplex(std::ofstream &out, cplx z)
{
  Put(out, static_cast<float>(z.real()));
  Put(out, static_cast<float>(z.imag()));
}

cplx GetComplex(std::ifstream &in)
{
  const float re = Get<float>(in);
  const float im = Get<float>(in);
  return {re, im};
}

SpaceTag CheckTag(std::uint32_t tag)
{
  if (tag < 1 || tag > 3)
  {
    throw FormatError("unknown space tag in operator file");
  }
  return static_cast<SpaceTag>(tag);
}

}  // namespace

void SaveOperator(const DiscreteOperator &op, const std::string &path)
{
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out)
    {
      throw IoError("cannot write '" + path + "'");
    }
    out.write(kMagic, 4);
    Put(out, kVersion);
    Put(out, static_cast<std::uint64_t>(op.Rows()));
    Put(out, static_cast<std::uint64_t>(op.Cols()));
    Put(out, static_cast<std::uint32_t>(op.storage));
    Put(out, static_cast<std::uint32_t>(op.domain));
    Put(out, static_cast<std::uint32_t>(op.dual));
    if (op.storage == DiscreteOperator::Storage::Dense)
    {
      for (Eigen::Index i = 0; i < op.dense.rows(); ++i)
      {
        for (Eigen::Index j = 0; j < op.dense.cols(); ++j)
        {
          PutComplex(out, op.dense(i, j));
        }
      }
    }
    else
    {
      SparseMatrix m = op.sparse;
      m.makeCompressed();
      for (Eigen::Index i = 0; i <= m.rows(); ++i)
      {
        Put(out, static_cast<std::uint64_t>(m.outerIndexPtr()[i]));
      }
      for (Eigen::Index k = 0; k < m.nonZeros(); ++k)
      {
        Put(out, static_cast<std::uint64_t>(m.innerIndexPtr()[k]));
      }
      for (Eigen::Index k = 0; k < m.nonZeros(); ++k)
      {
        PutComplex(out, m.valuePtr()[k]);
      }
    }
    if (!out)
    {
      throw IoError("failed while writing '" + path + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

DiscreteOperator LoadOperator(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw IoError("cannot open '" + path + "'");
  }
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
  {
    throw FormatError("'" + path + "' is not an operator file");
  }
  if (Get<std::uint32_t>(in) != kVersion)
  {
    throw FormatError("unsupported operator file version");
  }
  DiscreteOperator op;
  const auto rows = static_cast<Eigen::Index>(Get<std::uint64_t>(in));
  const auto cols = static_cast<Eigen::Index>(Get<std::uint64_t>(in));
  const std::uint32_t storage = Get<std::uint32_t>(in);
  if (storage > 1)
  {
    throw FormatError("unknown storage tag in operator file");
  }
  op.storage = static_cast<DiscreteOperator::Storage>(storage);
  op.domain = CheckTag(Get<std::uint32_t>(in));
  op.dual = CheckTag(Get<std::uint32_t>(in));
  op.label = "loaded from " + path;
  if (op.storage == DiscreteOperator::Storage::Dense)
  {
    op.dense.resize(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
    {
      for (Eigen::Index j = 0; j < cols; ++j)
      {
        op.dense(i, j) = GetComplex(in);
      }
    }
    return op;
  }
  std::vector<std::uint64_t> ptr(rows + 1);
  for (auto &p : ptr)
  {
    p = Get<std::uint64_t>(in);
  }
  const std::uint64_t nnz = ptr.back();
  std::vector<Eigen::Triplet<cplx>> trip;
  std::vector<std::uint64_t> col(nnz);
  for (auto &c : col)
  {
    c = Get<std::uint64_t>(in);
    if (c >= static_cast<std::uint64_t>(cols))
    {
      throw FormatError("column index out of range in operator file");
    }
  }
  for (Eigen::Index i = 0; i < rows; ++i)
  {
    if (ptr[i] > ptr[i + 1] || ptr[i + 1] > nnz)
    {
      throw FormatError("corrupt row pointer in operator file");
    }
    for (std::uint64_t k = ptr[i]; k < ptr[i + 1]; ++k)
    {
      trip.emplace_back(i, static_cast<Eigen::Index>(col[k]), cplx{});
    }
  }
  for (auto &t : trip)
  {
    t = Eigen::Triplet<cplx>(t.row(), t.col(), GetComplex(in));
  }
  op.sparse.resize(rows, cols);
  op.sparse.setFromTriplets(trip.begin(), trip.end());
  op.sparse.makeCompressed();
  return op;
}

}  // namespace osrc
