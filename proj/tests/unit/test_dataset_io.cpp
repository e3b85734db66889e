#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "sefield/dataset_io.hpp"
#include "sefield/errors.hpp"

using namespace sefield;

TEST(DatasetIo, BinaryRoundTrip) {
  const auto d = generate_dataset(PopulationSpec{7, 5, 0.2, MarginalSpec::uniform_mixture(10.0)}, RngStream(1));
  std::stringstream buf;
  write_matrix(buf, d);
  EXPECT_EQ(buf.str().size(), 4u + 4u + 16u + 8u * 35u);
  const auto e = read_matrix(buf);
  EXPECT_EQ(e.n, 7);
  EXPECT_EQ(e.p, 5);
  EXPECT_EQ(e.values, d.values);
}

TEST(DatasetIo, HeaderIsLittleEndian) {
  Dataset d;
  d.n = 1;
  d.p = 1;
  d.values = {1.0};
  std::stringstream buf;
  write_matrix(buf, d);
  const std::string s = buf.str();
  EXPECT_EQ(s.substr(0, 4), "SEFM");
  EXPECT_EQ(static_cast<unsigned char>(s[4]), 1u);
  EXPECT_EQ(static_cast<unsigned char>(s[8]), 1u);
  EXPECT_EQ(static_cast<unsigned char>(s[16]), 1u);
  // 1.0 = 0x3ff0000000000000
  EXPECT_EQ(static_cast<unsigned char>(s[31]), 0x3fu);
  EXPECT_EQ(static_cast<unsigned char>(s[30]), 0xf0u);
}

TEST(DatasetIo, BadInputs) {
  std::stringstream junk("XXXX");
  EXPECT_THROW(read_matrix(junk), InputError);
  Dataset d;
  d.n = 2;
  d.p = 2;
  d.values = {1, 2, 3, 4};
  std::stringstream buf;
  write_matrix(buf, d);
  std::stringstream cut(buf.str().substr(0, 40));
  EXPECT_THROW(read_matrix(cut), InputError);
  EXPECT_THROW(read_matrix_file("/nonexistent/x.bin"), IoError);
}

TEST(DatasetIo, Csv) {
  std::stringstream in("# header comment\n1,2,3\n\n4, 5 ,6e0\n");
  const auto d = read_matrix_csv(in);
  EXPECT_EQ(d.n, 2);
  EXPECT_EQ(d.p, 3);
  EXPECT_EQ(d(1, 1), 5.0);
  std::stringstream ragged("1,2\n3\n");
  EXPECT_THROW(read_matrix_csv(ragged), InputError);
  std::stringstream bad("1,x\n");
  EXPECT_THROW(read_matrix_csv(bad), InputError);
}

TEST(DatasetIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "sefield_io_test.bin";
  const auto d = generate_dataset(PopulationSpec{3, 4, 0.0, MarginalSpec::standard_normal()}, RngStream(2));
  write_matrix_file(path, d);
  EXPECT_EQ(read_matrix_file(path).values, d.values);
  std::filesystem::remove(path);
}
