from ghzsim._ghzsim import *  # noqa: F401,F403
