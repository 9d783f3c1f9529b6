#pragma once

#include <string>

#include "planestereo/disparity.hpp"
#include "planestereo/image.hpp"

namespace planestereo {

/// On-disk encodings for disparity maps.
enum class DisparityEncoding {
    Pfm,      ///< 32-bit float PFM, scale -1 (little-endian), rows bottom-up
    KittiPng, ///< 16-bit gray PNG, disparity = raw / 256, raw 0 = invalid
};

/// Pinhole calibration of the rectified pair.
struct CameraCalib {
    double focal = 0.0;    ///< pixels
    double baseline = 0.0; ///< meters
    double cx = 0.0;
    double cy = 0.0;

    void validate() const;
};

/// Reads an 8-bit grayscale PNG or PGM (P5). 16-bit inputs are narrowed by
/// a right shift of 8; `narrowed`, when given, reports that. Color images
/// are rejected with UnsupportedFormat.
GrayImage readGray(const std::string& path, bool* narrowed = nullptr);

/// Writes 8-bit grayscale, format chosen by extension (.png or .pgm).
void writeGray(const GrayImage& image, const std::string& path);

DisparityMap readDisparity(const std::string& path, DisparityEncoding encoding);
void writeDisparity(const DisparityMap& map, const std::string& path,
                    DisparityEncoding encoding);

/// Chooses the encoding from the file extension (.pfm or .png).
DisparityEncoding encodingForPath(const std::string& path);

enum class PlyFormat { Ascii, BinaryLittleEndian };

/// Back-projects valid disparities (Z = f*B/d) into an intensity-colored
/// point cloud. Pixels with d below `minDisparity` are skipped; throws
/// EmptyCloud when nothing remains.
void exportPointCloud(const DisparityMap& disparity, const GrayImage& image,
                      const CameraCalib& calib, const std::string& path,
                      PlyFormat format = PlyFormat::BinaryLittleEndian,
                      double minDisparity = 0.5);

} // namespace planestereo
