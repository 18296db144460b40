import platform

import numpy


class Version:
    version = "0.1.0"

    @staticmethod
    def version_string():
        return "rimaps " + Version.version

    @staticmethod
    def system_info_string():
        return Version.version_string(
        ) + "; Python " + platform.python_version() + "; numpy " + \
            numpy.__version__ + "; " + platform.system()
