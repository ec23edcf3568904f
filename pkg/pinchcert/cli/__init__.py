# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""pinchcert command line front-end"""

__version__: str = "1.0.0"
