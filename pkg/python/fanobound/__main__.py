"""Entry point for python -m fanobound"""
from .cli import main

if __name__ == "__main__":
    main()
