# flake8: noqa F401

from .dotenv import load, read, seed
