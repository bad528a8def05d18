#pragma once

#include "chyp/common.hpp"
#include "chyp/hermitian.hpp"
#include "chyp/isometry.hpp"
#include "chyp/classify.hpp"
#include "chyp/random.hpp"
#include "chyp/word.hpp"
#include "chyp/enumerate.hpp"
#include "chyp/certificate.hpp"
#include "chyp/jorgensen.hpp"
#include "chyp/explorer.hpp"
#include "chyp/report.hpp"
#include "chyp/io.hpp"
